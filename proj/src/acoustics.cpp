#include "wapeq/acoustics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>

#include "wapeq/csv.hpp"

namespace wapeq {

int propagating_mode_count(const SourceSpec& src, double water_depth) {
  if (!(water_depth > 0.0)) throw Error("water depth must be positive");
  const double k0 = src.k0();
  int m = static_cast<int>(std::floor(k0 * water_depth / std::numbers::pi));
  while (m >= 1 && !(m * std::numbers::pi / water_depth < k0)) --m;
  return std::max(0, m);
}

std::vector<cplx> mode_coefficients(const SourceSpec& src, double water_depth) {
  using std::numbers::pi;
  if (src.mode_count < 1) throw Error("starter needs at least one mode");
  if (!(src.z_source > 0.0) || !(src.z_source < water_depth))
    throw Error("source depth " + std::to_string(src.z_source) +
                " outside the water column (0, " + std::to_string(water_depth) +
                ")");
  const double k0 = src.k0();
  const cplx phase = std::polar(1.0, pi / 4.0);

  std::vector<cplx> c(src.mode_count);
  for (int m = 1; m <= src.mode_count; ++m) {
    const double gamma_m = m * pi / water_depth;
    if (gamma_m >= k0)
      throw EvanescentMode("mode " + std::to_string(m) +
                           " does not propagate at this frequency and depth");
    const double k_m = std::sqrt(k0 * k0 - gamma_m * gamma_m);
    c[m - 1] = phase * std::sqrt(2.0 * pi / k_m) * (2.0 / water_depth) *
               std::sin(gamma_m * src.z_source);
  }
  return c;
}

std::function<cplx(double)> normal_mode_starter(const SourceSpec& src,
                                                double water_depth) {
  const std::vector<cplx> c = mode_coefficients(src, water_depth);
  const double D = water_depth;
  return [c, D](double z) {
    cplx acc{};
    for (std::size_t m = 1; m <= c.size(); ++m)
      acc += c[m - 1] * std::sin(m * std::numbers::pi * z / D);
    return acc;
  };
}

std::function<cplx(double)> to_computational(std::function<cplx(double)> v0,
                                             const Environment& env) {
  const double s0 = env.bottom.s(0.0);
  return [v0 = std::move(v0), s0](double y) { return v0(y * s0); };
}

cplx field_at_receiver(const FieldVector& u, double r_n, double z_rec,
                       const Environment& env) {
  const double depth = env.bottom.s(r_n);
  if (!(z_rec > 0.0) || !(z_rec < depth))
    throw OutOfWater("receiver depth " + std::to_string(z_rec) +
                     " outside the water column (0, " + std::to_string(depth) +
                     ") at range " + std::to_string(r_n));
  const int J = u.subintervals();
  const double t = z_rec / depth * J;
  const int j = std::min(static_cast<int>(t), J - 1);
  const double w = t - j;
  return (1.0 - w) * u[j] + w * u[j + 1];
}

double transmission_loss(cplx v, double r) {
  if (!(r > 0.0)) throw ZeroRange();
  const double mag = std::abs(v);
  if (mag == 0.0) return std::numeric_limits<double>::infinity();
  return -20.0 * std::log10(mag / std::sqrt(r));
}

std::function<cplx(double)> starter_from_csv(const std::string& path) {
  const auto rows = read_numeric_csv(path, 3);
  if (rows.size() < 2) throw Error("starter table needs at least two rows");
  auto table = std::make_shared<std::vector<std::array<double, 3>>>();
  table->reserve(rows.size());
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    if (!(row[0] > prev)) throw Error("starter table depths must increase");
    prev = row[0];
    table->push_back({row[0], row[1], row[2]});
  }
  return [table](double z) -> cplx {
    const auto& t = *table;
    if (z <= t.front()[0]) return {t.front()[1], t.front()[2]};
    if (z >= t.back()[0]) return {t.back()[1], t.back()[2]};
    auto it = std::upper_bound(
        t.begin(), t.end(), z,
        [](double v, const std::array<double, 3>& row) { return v < row[0]; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (z - lo[0]) / (hi[0] - lo[0]);
    return {(1.0 - w) * lo[1] + w * hi[1], (1.0 - w) * lo[2] + w * hi[2]};
  };
}

}  // namespace wapeq
