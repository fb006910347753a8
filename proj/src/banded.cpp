#include "wapeq/banded.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace wapeq {

double BandMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : ab_) m = std::max(m, std::abs(z));
  return m;
}

std::vector<cplx> banded_solve(BandMatrix& a, std::vector<cplx> rhs,
                               double rel_pivot_tol) {
  const int n = a.n();
  const int kl = a.kl();
  const int kv = a.kl() + a.ku();  // upper bandwidth of U after fill
  if (static_cast<int>(rhs.size()) != n)
    throw Error("banded_solve: rhs size does not match matrix dimension");
  if (n == 0) return {};

  const double breakdown = rel_pivot_tol * a.max_abs();

  for (int j = 0; j < n; ++j) {
    const int last_row = std::min(n - 1, j + kl);
    int piv = j;
    double piv_mag = std::abs(a.at(j, j));
    for (int i = j + 1; i <= last_row; ++i) {
      const double m = std::abs(a.at(i, j));
      if (m > piv_mag) {
        piv = i;
        piv_mag = m;
      }
    }
    if (piv_mag <= breakdown)
      throw SingularOperator("banded elimination pivot breakdown at column " +
                             std::to_string(j));

    const int last_col = std::min(n - 1, j + kv);
    if (piv != j) {
      for (int c = j; c <= last_col; ++c) std::swap(a.at(j, c), a.at(piv, c));
      std::swap(rhs[j], rhs[piv]);
    }
    const cplx d = a.at(j, j);
    for (int i = j + 1; i <= last_row; ++i) {
      const cplx m = a.at(i, j) / d;
      if (m == cplx{}) continue;
      for (int c = j + 1; c <= last_col; ++c) a.at(i, c) -= m * a.at(j, c);
      rhs[i] -= m * rhs[j];
    }
  }

  std::vector<cplx> x(n);
  for (int i = n - 1; i >= 0; --i) {
    cplx acc = rhs[i];
    const int last_col = std::min(n - 1, i + kv);
    for (int c = i + 1; c <= last_col; ++c) acc -= a.at(i, c) * x[c];
    x[i] = acc / a.at(i, i);
  }
  return x;
}

}  // namespace wapeq
