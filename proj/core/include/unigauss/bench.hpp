#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace unigauss {

struct BenchRecord {
  int d = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  int trials = 0;
  double mean_ns = 0;
  double mult_count = 0;
};

// Mean wall time and field-multiplication count of decompose() over `trials`
// random unitary inputs. Input validation is left out of both measurements.
BenchRecord bench_decompose(int d, std::uint32_t p, std::uint32_t e, int trials, std::uint64_t seed);

// Least-squares slope of log(mult_count) against log(l), l = d/2.
double fit_scaling(const std::vector<BenchRecord>& records);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);

}  // namespace unigauss
