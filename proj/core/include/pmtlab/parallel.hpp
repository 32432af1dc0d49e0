#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pmtlab/error.hpp"

#ifdef PMTLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace pmt {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void merge(const CompensatedSum& o) {
    add(o.sum_);
    add(o.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void set_thread_count(int threads);
int thread_count();

/// Runs body(k) for every k in [begin, end), possibly in parallel. Each k must
/// touch disjoint output.
template <typename Body>
void for_each_slab(int begin, int end, Body&& body) {
#ifdef PMTLAB_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (int k = begin; k < end; ++k) body(k);
#else
  for (int k = begin; k < end; ++k) body(k);
#endif
}

/// Like for_each_slab, for bodies that can fail: body(k) returns an error
/// message or an empty string. The error of the lowest failing slab is
/// rethrown as a Rejection after the loop.
template <typename Body>
void for_each_slab_checked(int begin, int end, Body&& body) {
  std::vector<std::string> errors(static_cast<std::size_t>(end > begin ? end - begin : 0));
  for_each_slab(begin, end, [&](int k) { errors[static_cast<std::size_t>(k - begin)] = body(k); });
  for (const auto& e : errors)
    if (!e.empty()) throw Rejection(e);
}

/// Deterministic reduction: body(k, acc) accumulates slab k sequentially, and
/// the slab partials are merged in slab order. The result does not depend on
/// the number of threads.
template <typename Body>
double reduce_slabs(int begin, int end, Body&& body) {
  std::vector<CompensatedSum> partial(static_cast<std::size_t>(end > begin ? end - begin : 0));
  for_each_slab(begin, end, [&](int k) { body(k, partial[static_cast<std::size_t>(k - begin)]); });
  CompensatedSum total;
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

}  // namespace pmt
