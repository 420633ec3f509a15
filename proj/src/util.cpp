#include "synco/util.hpp"

#include <numeric>
#include <sstream>
#include <thread>

#include "synco/errors.hpp"

namespace synco {

long long checked_pow(int n, int k, long long cap) {
  long long r = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && r > cap / n) {
      std::ostringstream os;
      os << "value " << n << "^" << k << " exceeds limit " << cap;
      throw ResourceError(os.str());
    }
    r *= n;
  }
  return r;
}

std::vector<std::int64_t> sample_indices(std::int64_t count, std::int64_t take, DetRng& rng) {
  std::vector<std::int64_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  if (take >= count) return idx;
  for (std::int64_t i = 0; i < take; ++i) {
    std::int64_t j = i + rng.pick(static_cast<std::uint32_t>(count - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  return idx;
}

void parallel_for(std::int64_t begin, std::int64_t end, int threads,
                  const std::function<void(std::int64_t)>& body) {
  if (end <= begin) return;
  if (threads < 2 || end - begin == 1) {
    for (std::int64_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::int64_t total = end - begin;
  int workers = static_cast<int>(std::min<std::int64_t>(threads, total));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = begin + total * w / workers;
    std::int64_t hi = begin + total * (w + 1) / workers;
    pool.emplace_back([lo, hi, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace synco
