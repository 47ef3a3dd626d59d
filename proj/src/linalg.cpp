#include "qguess/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qg {

namespace {

void check_finite(const std::vector<Complex>& amps, const char* what) {
  for (const Complex& z : amps) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument(std::string(what) + ": non-finite amplitude");
    }
  }
}

double norm_of(const std::vector<Complex>& amps) {
  double s = 0.0;
  for (const Complex& z : amps) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amps, bool normalized)
    : amps_(std::move(amps)), normalized_(normalized) {}

StateVector StateVector::normalized(std::vector<Complex> amps) {
  check_finite(amps, "StateVector");
  if (amps.empty()) throw std::invalid_argument("StateVector: dimension must be positive");
  const double n = norm_of(amps);
  if (std::abs(n - 1.0) > kNormTol) {
    throw std::invalid_argument("StateVector: norm " + std::to_string(n) +
                                " is not 1 within tolerance");
  }
  return StateVector(std::move(amps), true);
}

StateVector StateVector::raw(std::vector<Complex> amps) {
  check_finite(amps, "StateVector");
  if (amps.empty()) throw std::invalid_argument("StateVector: dimension must be positive");
  return StateVector(std::move(amps), false);
}

double StateVector::norm() const { return norm_of(amps_); }

UnitaryMatrix::UnitaryMatrix(int dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  if (dim <= 0) throw std::invalid_argument("UnitaryMatrix: dimension must be positive");
  std::vector<Complex> e(static_cast<std::size_t>(dim) * dim, Complex(0.0));
  for (int k = 0; k < dim; ++k) e[static_cast<std::size_t>(k) * dim + k] = 1.0;
  return UnitaryMatrix(dim, std::move(e));
}

UnitaryMatrix UnitaryMatrix::from_entries(int dim, std::vector<Complex> entries) {
  if (dim <= 0) throw std::invalid_argument("UnitaryMatrix: dimension must be positive");
  if (entries.size() != static_cast<std::size_t>(dim) * dim) {
    throw std::invalid_argument("UnitaryMatrix: entry count does not match dimension");
  }
  check_finite(entries, "UnitaryMatrix");
  // ||U^dag U - I||_max
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      Complex s = 0.0;
      for (int k = 0; k < dim; ++k) {
        s += std::conj(entries[static_cast<std::size_t>(k) * dim + a]) *
             entries[static_cast<std::size_t>(k) * dim + b];
      }
      if (a == b) s -= 1.0;
      if (std::abs(s) > kUnitaryTol) {
        throw std::invalid_argument("UnitaryMatrix: not unitary within tolerance");
      }
    }
  }
  return UnitaryMatrix(dim, std::move(entries));
}

UnitaryMatrix UnitaryMatrix::from_columns(const std::vector<StateVector>& columns) {
  if (columns.empty()) throw std::invalid_argument("UnitaryMatrix: no columns");
  const int dim = columns[0].dim();
  if (static_cast<int>(columns.size()) != dim) {
    throw std::invalid_argument("UnitaryMatrix: need exactly dim columns");
  }
  std::vector<Complex> e(static_cast<std::size_t>(dim) * dim);
  for (int c = 0; c < dim; ++c) {
    if (columns[c].dim() != dim) {
      throw std::invalid_argument("UnitaryMatrix: column dimension mismatch");
    }
    for (int r = 0; r < dim; ++r) e[static_cast<std::size_t>(r) * dim + c] = columns[c][r];
  }
  return from_entries(dim, std::move(e));
}

StateVector UnitaryMatrix::column(int col) const {
  std::vector<Complex> amps(static_cast<std::size_t>(dim_));
  for (int r = 0; r < dim_; ++r) amps[r] = (*this)(r, col);
  return StateVector::normalized(std::move(amps));
}

GramMatrix::GramMatrix(int size, std::vector<Complex> entries)
    : size_(size), entries_(std::move(entries)) {}

double GramMatrix::max_offdiag() const {
  double m = 0.0;
  for (int a = 0; a < size_; ++a) {
    for (int b = a + 1; b < size_; ++b) m = std::max(m, std::abs((*this)(a, b)));
  }
  return m;
}

Complex inner_product(const StateVector& u, const StateVector& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  Complex s = 0.0;
  for (int k = 0; k < u.dim(); ++k) s += std::conj(u[k]) * v[k];
  return s;
}

StateVector tensor(const StateVector& u, const StateVector& v) {
  std::vector<Complex> amps(static_cast<std::size_t>(u.dim()) * v.dim());
  for (int i = 0; i < u.dim(); ++i) {
    for (int k = 0; k < v.dim(); ++k) {
      amps[static_cast<std::size_t>(i) * v.dim() + k] = u[i] * v[k];
    }
  }
  return (u.is_normalized() && v.is_normalized()) ? StateVector::normalized(std::move(amps))
                                                  : StateVector::raw(std::move(amps));
}

StateVector apply(const UnitaryMatrix& u, const StateVector& v) {
  if (u.dim() != v.dim()) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<Complex> amps(static_cast<std::size_t>(u.dim()), Complex(0.0));
  for (int r = 0; r < u.dim(); ++r) {
    Complex s = 0.0;
    for (int c = 0; c < u.dim(); ++c) s += u(r, c) * v[c];
    amps[r] = s;
  }
  return v.is_normalized() ? StateVector::normalized(std::move(amps))
                           : StateVector::raw(std::move(amps));
}

UnitaryMatrix dagger(const UnitaryMatrix& u) {
  const int d = u.dim();
  std::vector<Complex> e(static_cast<std::size_t>(d) * d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) e[static_cast<std::size_t>(r) * d + c] = std::conj(u(c, r));
  }
  return UnitaryMatrix::from_entries(d, std::move(e));
}

GramMatrix gram(const std::vector<StateVector>& vectors) {
  const int n = static_cast<int>(vectors.size());
  for (const StateVector& v : vectors) {
    if (v.dim() != vectors[0].dim()) throw std::invalid_argument("gram: dimension mismatch");
  }
  std::vector<Complex> e(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const Complex g = inner_product(vectors[a], vectors[b]);
      e[static_cast<std::size_t>(a) * n + b] = g;
      e[static_cast<std::size_t>(b) * n + a] = std::conj(g);
    }
  }
  return GramMatrix(n, std::move(e));
}

std::vector<StateVector> orthonormalize(const std::vector<StateVector>& vectors,
                                        double tol) {
  std::vector<std::vector<Complex>> kept;
  for (const StateVector& v : vectors) {
    if (!vectors.empty() && v.dim() != vectors[0].dim()) {
      throw std::invalid_argument("orthonormalize: dimension mismatch");
    }
    std::vector<Complex> w = v.amps();
    // two projection passes keep the output orthonormal to constructor precision
    for (int pass = 0; pass < 2; ++pass) {
      for (const std::vector<Complex>& q : kept) {
        Complex ov = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) ov += std::conj(q[k]) * w[k];
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= ov * q[k];
      }
    }
    const double n = norm_of(w);
    if (n < tol) continue;
    for (Complex& z : w) z /= n;
    kept.push_back(std::move(w));
  }
  std::vector<StateVector> out;
  out.reserve(kept.size());
  for (std::vector<Complex>& w : kept) out.push_back(StateVector::normalized(std::move(w)));
  return out;
}

}  // namespace qg
