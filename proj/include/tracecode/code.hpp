#pragma once

// The trace code C_D = {(Tr(x d_1), ..., Tr(x d_n)) : x in GF(q)} and its weights.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tracecode/defining_set.hpp"
#include "tracecode/weights.hpp"

namespace tracecode {

/// c_x in the order of D.
inline std::vector<std::uint8_t> codeword(const DefiningSet& D, FieldElement x) {
  const FieldContext& f = D.field();
  std::vector<std::uint8_t> c;
  c.reserve(D.size());
  for (FieldElement d : D.elements()) c.push_back(static_cast<std::uint8_t>(f.trace(f.mul(x, d))));
  return c;
}

inline std::uint64_t hamming_weight(std::span<const std::uint8_t> c) {
  return static_cast<std::uint64_t>(std::count_if(c.begin(), c.end(), [](std::uint8_t v) { return v != 0; }));
}

/// n - N_x(0), counting zero traces directly.
inline std::uint64_t weight_by_counting_oracle(const DefiningSet& D, FieldElement x) {
  const FieldContext& f = D.field();
  std::uint64_t zeros = 0;
  for (FieldElement d : D.elements()) zeros += f.trace(f.mul(x, d)) == 0;
  return D.size() - zeros;
}

namespace detail {

inline unsigned resolve_threads(unsigned requested, std::uint64_t work) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (work < (std::uint64_t{1} << 16)) t = 1;
  return t;
}

}  // namespace detail

/// Histogram of wt(c_x) over all q values of x (codewords counted with kernel multiplicity).
inline std::vector<std::uint64_t> raw_weight_histogram(const DefiningSet& D, unsigned threads = 0) {
  const FieldContext& f = D.field();
  const std::uint32_t n_mult = f.order() - 1;
  std::vector<std::uint32_t> logs;
  logs.reserve(D.size());
  for (FieldElement d : D.elements())
    if (!d.is_zero()) logs.push_back(*f.log(d));

  std::vector<std::uint64_t> hist(D.size() + 1, 0);
  hist[0] = 1;  // x = 0

  const unsigned workers = detail::resolve_threads(threads, std::uint64_t{n_mult} * logs.size());
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(D.size() + 1, 0));
  auto scan = [&](unsigned worker) {
    auto& h = partial[worker];
    const std::uint32_t begin = static_cast<std::uint32_t>(std::uint64_t{n_mult} * worker / workers);
    const std::uint32_t end = static_cast<std::uint32_t>(std::uint64_t{n_mult} * (worker + 1) / workers);
    for (std::uint32_t j = begin; j < end; ++j) {
      std::uint64_t w = 0;
      for (std::uint32_t l : logs) w += f.trace_at_log(j + l) != 0;
      ++h[w];
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(scan, w);
  }
  for (const auto& h : partial)
    for (std::size_t w = 0; w < h.size(); ++w) hist[w] += h[w];
  return hist;
}

/// Exact weight distribution of C_D; the dimension is read off the kernel size.
inline WeightDistribution build_code_weights(const DefiningSet& D, unsigned threads = 0) {
  if (D.empty()) throw std::invalid_argument("defining set is empty");
  const FieldContext& f = D.field();
  const auto hist = raw_weight_histogram(D, threads);

  std::uint64_t kernel = hist[0];
  unsigned kernel_log = 0;
  while (kernel % f.characteristic() == 0) {
    kernel /= f.characteristic();
    ++kernel_log;
  }
  if (kernel != 1) throw std::logic_error("kernel size is not a power of p");

  WeightDistribution wd;
  wd.p = f.characteristic();
  wd.m = f.degree();
  wd.n = D.size();
  wd.k = f.degree() - kernel_log;
  const std::uint64_t kernel_size = hist[0];
  for (std::size_t w = 0; w < hist.size(); ++w) {
    if (hist[w] == 0) continue;
    if (hist[w] % kernel_size != 0) throw std::logic_error("raw weight count not divisible by kernel size");
    wd.counts[w] = hist[w] / kernel_size;
  }
  return wd;
}

}  // namespace tracecode
