#include "weilad/weil_functor.hpp"

namespace weilad {

namespace {

double binomial(unsigned n, unsigned k) {
  double b = 1.0;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double central_difference(const SmoothMap& f, const std::vector<double>& a, const std::vector<unsigned>& e,
                          std::size_t output, double h) {
  const std::size_t n = a.size();
  std::vector<unsigned> k(n, 0);
  unsigned total = 0;
  for (auto ei : e) total += ei;
  double sum = 0.0;
  std::vector<double> point(n);
  for (;;) {
    double weight = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      weight *= ((k[i] % 2) ? -1.0 : 1.0) * binomial(e[i], k[i]);
      point[i] = a[i] + (0.5 * e[i] - k[i]) * h;
    }
    sum += weight * evaluate<double>(f, point)[output];
    std::size_t i = 0;
    while (i < n && k[i] == e[i]) k[i++] = 0;
    if (i == n) break;
    ++k[i];
  }
  return sum / std::pow(h, static_cast<int>(total));
}

}  // namespace

double fd_oracle(const SmoothMap& f, const std::vector<double>& a, const std::vector<unsigned>& e, std::size_t output) {
  if (a.size() != f.arity() || e.size() != f.arity())
    throw Error(ErrorCode::bad_parameter, "point and multi-index must match the arity");
  unsigned total = 0;
  for (auto ei : e) total += ei;
  if (total == 0) return evaluate<double>(f, a)[output];
  const double h = 1e-3 * total;
  const double coarse = central_difference(f, a, e, output, h);
  const double fine = central_difference(f, a, e, output, h / 2);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace weilad
