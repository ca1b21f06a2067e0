#include "unigauss/bench.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "unigauss/elim.hpp"

namespace unigauss {

BenchRecord bench_decompose(int d, std::uint32_t p, std::uint32_t e, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::kInvalidArgument, "trials must be >= 1");
  const FieldPtr f = Field::get(p, e);
  Rng rng(seed);
  std::vector<Mat> inputs;
  inputs.reserve(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) inputs.push_back(random_unitary(f, d, rng));

  const DecomposeOptions opts{.validate_input = false, .check_steps = false};
  std::uint64_t mults = 0;
  for (const auto& g : inputs) {
    MulCounter counter;
    decompose(g, opts);
    mults += counter.count();
  }
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& g : inputs) decompose(g, opts);
  const auto ns = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - t0).count();
  return {d, p, e, trials, ns / trials, static_cast<double>(mults) / trials};
}

double fit_scaling(const std::vector<BenchRecord>& records) {
  std::set<int> dims;
  for (const auto& r : records) dims.insert(r.d);
  if (records.size() < 3 || dims.size() < 3) {
    throw Error(Errc::kInsufficientData, "need at least 3 records with distinct d");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : records) {
    if (r.d < 2 || r.mult_count <= 0) throw Error(Errc::kInvalidArgument, "records need d >= 2 and positive counts");
    const double x = std::log(static_cast<double>(r.d / 2));
    const double y = std::log(r.mult_count);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(records.size());
  const double den = n * sxx - sx * sx;
  if (den == 0) throw Error(Errc::kInsufficientData, "need at least 3 distinct l");
  return (n * sxy - sx * sy) / den;
}

std::string bench_csv_header() { return "d,p,e,trials,mean_ns,mult_count"; }

std::string bench_csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os.precision(12);
  os << r.d << ',' << r.p << ',' << r.e << ',' << r.trials << ',' << r.mean_ns << ',' << r.mult_count;
  return os.str();
}

}  // namespace unigauss
