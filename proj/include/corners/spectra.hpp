#pragma once

#include <cstdint>
#include <vector>

#include "corners/families.hpp"
#include "corners/linop.hpp"

namespace corners {

// Eigenvalues sorted descending plus inertia at the default tolerance 1e-10,
// with the matrix trace and Frobenius norm computed independently of the
// eigensolve.
struct SpectralSummary {
  std::vector<double> eigenvalues;
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  std::int64_t n_zero = 0;
  double trace = 0.0;
  double frobenius = 0.0;
};

struct Inertia {
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  std::int64_t n_zero = 0;
};

// Full eigen-decomposition by cyclic Jacobi rotations. Guarded to N <= 2048.
// `vectors` is row-major with column j the eigenvector of eigenvalues[j]
// (only filled when requested). `converged` is false if the sweep cap (30)
// was hit before the off-diagonal mass fell below 1e-12 * frobenius.
struct JacobiResult {
  std::vector<double> eigenvalues;  // descending
  std::vector<double> vectors;      // row-major N x N, may be empty
  int sweeps = 0;
  bool converged = true;
};

JacobiResult jacobi_eigen(const DenseSymMatrix& m, bool want_vectors);

SpectralSummary eig_dense(const DenseSymMatrix& m);

SpectralSummary summarize(const DenseSymMatrix& m, std::vector<double> eigenvalues);

Inertia inertia(const SpectralSummary& s, double tol);

struct RitzPair {
  double value = 0.0;
  double residual = 0.0;  // ||A v - value v|| for the unit Ritz vector
};

struct LanczosResult {
  std::vector<RitzPair> top;     // descending
  std::vector<RitzPair> bottom;  // ascending
  int iterations = 0;
  bool breakdown = false;  // invariant subspace found before max_iter
  bool converged = false;  // extreme residuals below tolerance
};

enum class LanczosWant { Top, Bottom, Both };

// Lanczos with full reorthogonalisation of the Krylov basis. Deterministic
// for a fixed seed. Residual-based early stop when the requested extremes
// have relative residual below `tol`. Throws std::range_error when operator
// values leave double range.
LanczosResult lanczos_extremes(const SymmetricOperator& op, int k, int max_iter,
                               std::uint64_t seed = 0, double tol = 1e-10,
                               LanczosWant want = LanczosWant::Both);

enum class DecayModel { Exponential, Power };

// Least-squares fit of ln(lambda_n) against n (exponential) or ln n (power)
// over the 1-based index interval [first, last] of the descending spectrum.
struct DecayFit {
  DecayModel model = DecayModel::Exponential;
  double rate = 0.0;      // slope in the model's log coordinates
  std::int64_t first = 0;
  std::int64_t last = 0;
  double residual = 0.0;  // RMS of the regression residuals
};

DecayFit decay_fit(const SpectralSummary& s, DecayModel model, std::int64_t first, std::int64_t last);

}  // namespace corners
