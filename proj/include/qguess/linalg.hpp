#pragma once

#include <complex>
#include <vector>

namespace qg {

using Complex = std::complex<double>;

// Centralized tolerance levels. All dimensions in this library are tiny
// (B, A <= ~64), so double precision leaves a wide margin between them.
inline constexpr double kUnitaryTol = 1e-10;  // constructor checks: unitarity, basis orthonormality
inline constexpr double kNormTol = 1e-12;     // normalization checks
inline constexpr double kOrthTol = 1e-9;      // default orthogonality / perfect-guess tolerance
inline constexpr double kEigFloor = 1e-12;    // eigenvalues at or below this count as zero

/// Complex amplitude vector of fixed dimension.
///
/// Carries a `normalized` tag: probe and basis states are built through
/// normalized() and validated, while post-selected branches are stored raw
/// (their squared norms are the outcome probabilities). All amplitudes must
/// be finite; NaN/Inf are rejected at construction.
class StateVector {
 public:
  /// Validates finiteness and | ||v|| - 1 | <= kNormTol.
  static StateVector normalized(std::vector<Complex> amps);
  /// Validates finiteness only.
  static StateVector raw(std::vector<Complex> amps);

  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  bool is_normalized() const noexcept { return normalized_; }
  const Complex& operator[](int k) const noexcept {
    return amps_[static_cast<std::size_t>(k)];
  }
  const std::vector<Complex>& amps() const noexcept { return amps_; }
  double norm() const;

 private:
  StateVector(std::vector<Complex> amps, bool normalized);

  std::vector<Complex> amps_;
  bool normalized_ = false;
};

/// Dense square complex matrix validated as unitary at construction
/// (||U^dag U - I||_max <= kUnitaryTol). Row-major storage.
class UnitaryMatrix {
 public:
  static UnitaryMatrix identity(int dim);
  static UnitaryMatrix from_entries(int dim, std::vector<Complex> entries);
  static UnitaryMatrix from_columns(const std::vector<StateVector>& columns);

  int dim() const noexcept { return dim_; }
  const Complex& operator()(int row, int col) const noexcept {
    return entries_[static_cast<std::size_t>(row) * dim_ + col];
  }
  /// Column as a normalized state.
  StateVector column(int col) const;

 private:
  UnitaryMatrix(int dim, std::vector<Complex> entries);

  int dim_ = 0;
  std::vector<Complex> entries_;
};

/// Matrix of pairwise inner products. Hermitian with a real non-negative
/// diagonal by construction.
class GramMatrix {
 public:
  int size() const noexcept { return size_; }
  const Complex& operator()(int a, int b) const noexcept {
    return entries_[static_cast<std::size_t>(a) * size_ + b];
  }
  /// Largest |G_ab| over a != b; zero for size <= 1.
  double max_offdiag() const;

 private:
  friend GramMatrix gram(const std::vector<StateVector>& vectors);
  GramMatrix(int size, std::vector<Complex> entries);

  int size_ = 0;
  std::vector<Complex> entries_;
};

/// <u|v>, conjugate-linear in the first argument.
Complex inner_product(const StateVector& u, const StateVector& v);

/// Kronecker product, first factor major: out[(i * v.dim) + k] = u_i * v_k.
StateVector tensor(const StateVector& u, const StateVector& v);

/// Matrix-vector product U v.
StateVector apply(const UnitaryMatrix& u, const StateVector& v);

/// Conjugate transpose.
UnitaryMatrix dagger(const UnitaryMatrix& u);

/// Pairwise inner products of a list of same-dimension vectors.
GramMatrix gram(const std::vector<StateVector>& vectors);

/// Modified Gram-Schmidt with re-orthogonalization. Vectors whose residual
/// norm drops below `tol` are dropped; output spans the input and has
/// identity Gram matrix within kUnitaryTol. May return fewer vectors than
/// given (possibly none).
std::vector<StateVector> orthonormalize(const std::vector<StateVector>& vectors,
                                        double tol);

}  // namespace qg
