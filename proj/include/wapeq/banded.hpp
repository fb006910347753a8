#pragma once

#include <complex>
#include <vector>

#include "wapeq/errors.hpp"

namespace wapeq {

using cplx = std::complex<double>;

// Complex banded matrix in gbtrf-style column storage: entry (i, j) lives at
// ab[j * ldab + kl + ku + i - j], with kl extra superdiagonal rows reserved
// so partial-pivoting row swaps stay inside the band. For a pentadiagonal
// matrix (kl = ku = 2) this is the familiar 7-diagonal working array.
class BandMatrix {
 public:
  BandMatrix(int n, int kl, int ku)
      : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
        ab_(static_cast<std::size_t>(ldab_) * n, cplx{}) {}

  int n() const { return n_; }
  int kl() const { return kl_; }
  int ku() const { return ku_; }

  // Valid for i - j in [-(kl+ku), kl]; the extra upper range is fill space.
  cplx& at(int i, int j) { return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]; }
  cplx at(int i, int j) const { return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]; }

  double max_abs() const;

 private:
  int n_, kl_, ku_, ldab_;
  std::vector<cplx> ab_;
};

// Banded Gaussian elimination with partial pivoting; consumes the matrix and
// returns the solution. A pivot of magnitude at most rel_pivot_tol times the
// largest entry of the original matrix raises SingularOperator.
std::vector<cplx> banded_solve(BandMatrix& a, std::vector<cplx> rhs,
                               double rel_pivot_tol = 1e-14);

}  // namespace wapeq
