#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

// Pointwise alternating multilinear algebra on an n-dimensional real vector
// space. Every form is stored densely over all index tuples: the form block
// (i₁…i_k) comes first in row-major order, followed by the value block.
//
// Component convention: α_{i₁…i_k} = α(e_{i₁},…,e_{i_k}), so evaluation on
// vectors is plain multilinear contraction. Polyvectors use the determinant
// convention: (v₁∧…∧v_q)^{a₁…a_q} = det[v_r^{a_s}], hence e_{a₁}∧…∧e_{a_q}
// has unit component at its increasing index tuple.
namespace acobs {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPositiveDefinite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

namespace detail {

// Dense storage for a degree-k form with a rank-r value block. When the
// degree exceeds the dimension (or an alternating value block exceeds it) the
// form is identically zero and only a single zero block is kept.
class DenseStorage {
 public:
  DenseStorage() = default;
  DenseStorage(int dim, int degree, int value_rank, bool alternating_value);

  int dim() const noexcept { return dim_; }
  int degree() const noexcept { return degree_; }
  int value_rank() const noexcept { return value_rank_; }
  bool alternating_value() const noexcept { return alternating_value_; }
  bool vanishes_identically() const noexcept { return vanishes_; }
  std::size_t value_size() const noexcept { return value_size_; }

  std::span<const double> block(std::span<const int> form_idx) const;
  std::span<double> block(std::span<const int> form_idx);
  std::span<const double> raw() const noexcept { return data_; }
  std::span<double> raw() noexcept { return data_; }

  // Writes `value` at the increasing tuple and its signed images at every
  // permutation of it.
  void scatter(std::span<const int> increasing, std::span<const double> value);

  // Alt over form indices (and over value indices when alternating).
  void antisymmetrize();
  // Largest deviation from the alternating symmetries.
  double antisymmetry_residual() const;

  void check_compatible(const DenseStorage& other) const;

 private:
  int dim_ = 0;
  int degree_ = 0;
  int value_rank_ = 0;
  bool alternating_value_ = false;
  bool vanishes_ = false;
  std::size_t value_size_ = 1;
  std::vector<double> data_;
};

}  // namespace detail

template <class Derived>
class FormBase {
 public:
  int dim() const noexcept { return s_.dim(); }
  int degree() const noexcept { return s_.degree(); }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : s_.raw()) m = std::max(m, std::abs(v));
    return m;
  }
  double antisymmetry_residual() const { return s_.antisymmetry_residual(); }
  void antisymmetrize() { s_.antisymmetrize(); }

  const detail::DenseStorage& storage() const noexcept { return s_; }
  detail::DenseStorage& storage() noexcept { return s_; }

  Derived& operator+=(const Derived& o) {
    s_.check_compatible(o.s_);
    auto dst = s_.raw();
    auto src = o.s_.raw();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    return self();
  }
  Derived& operator-=(const Derived& o) {
    s_.check_compatible(o.s_);
    auto dst = s_.raw();
    auto src = o.s_.raw();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= src[i];
    return self();
  }
  Derived& operator*=(double f) {
    for (double& v : s_.raw()) v *= f;
    return self();
  }

  friend Derived operator+(Derived a, const Derived& b) { return a += b; }
  friend Derived operator-(Derived a, const Derived& b) { return a -= b; }
  friend Derived operator*(double f, Derived a) { return a *= f; }
  friend Derived operator*(Derived a, double f) { return a *= f; }

 protected:
  FormBase() = default;
  explicit FormBase(detail::DenseStorage s) : s_(std::move(s)) {}

  detail::DenseStorage s_;

 private:
  Derived& self() { return static_cast<Derived&>(*this); }
};

// An element of Λ^q V in the determinant convention.
class Multivector : public FormBase<Multivector> {
 public:
  Multivector(int dim, int degree);

  static Multivector scalar(int dim, double value);
  static Multivector from_vector(const Vector& v);
  // v₁ ∧ … ∧ v_q
  static Multivector wedge_of(std::span<const Vector> vs);
  static Multivector basis(int dim, std::span<const int> increasing);

  int poly_degree() const noexcept { return s_.value_rank(); }
  double component(std::span<const int> idx) const;
  double component(std::initializer_list<int> idx) const { return component(std::span<const int>(idx.begin(), idx.size())); }
  std::span<const double> data() const { return s_.block({}); }
  std::span<double> data() { return s_.block({}); }
};

// (P ∧ Q)^{a} = 1/(j! l!) Σ_σ sign σ · P^{a_σ(1)…a_σ(j)} Q^{a_σ(j+1)…}
Multivector wedge(const Multivector& p, const Multivector& q);

// Real-valued alternating k-form.
class ScalarForm : public FormBase<ScalarForm> {
 public:
  ScalarForm(int dim, int degree);

  double component(std::span<const int> idx) const { return s_.block(idx)[0]; }
  double component(std::initializer_list<int> idx) const { return component(std::span<const int>(idx.begin(), idx.size())); }
  void set(std::span<const int> idx, double v);
  void set(std::initializer_list<int> idx, double v) { set(std::span<const int>(idx.begin(), idx.size()), v); }

  double operator()(std::span<const Vector> args) const;
  double operator()(std::initializer_list<Vector> args) const { return (*this)(std::span<const Vector>(args.begin(), args.size())); }
};

// Tangent-vector-valued alternating k-form.
class VForm : public FormBase<VForm> {
 public:
  VForm(int dim, int degree);

  // Degree-1 form X ↦ M X.
  static VForm from_matrix(const Matrix& m);
  // Degree-0 form (a single vector).
  static VForm from_vector(const Vector& v);
  Matrix as_matrix() const;

  Vector component(std::span<const int> idx) const;
  Vector component(std::initializer_list<int> idx) const { return component(std::span<const int>(idx.begin(), idx.size())); }
  void set(std::span<const int> idx, const Vector& v);

  Vector operator()(std::span<const Vector> args) const;
  Vector operator()(std::initializer_list<Vector> args) const { return (*this)(std::span<const Vector>(args.begin(), args.size())); }
};

// End(V)-valued alternating k-form; value (a, b) is output a, input b.
class EndForm : public FormBase<EndForm> {
 public:
  EndForm(int dim, int degree);

  static EndForm from_matrix(const Matrix& m);  // degree 0

  Matrix component(std::span<const int> idx) const;
  Matrix component(std::initializer_list<int> idx) const { return component(std::span<const int>(idx.begin(), idx.size())); }
  void set(std::span<const int> idx, const Matrix& m);

  Matrix operator()(std::span<const Vector> args) const;
  Matrix operator()(std::initializer_list<Vector> args) const { return (*this)(std::span<const Vector>(args.begin(), args.size())); }
};

// Λ^q V-valued alternating p-form.
class PolyForm : public FormBase<PolyForm> {
 public:
  PolyForm(int dim, int degree, int poly_degree);

  int poly_degree() const noexcept { return s_.value_rank(); }

  Multivector component(std::span<const int> idx) const;
  void set(std::span<const int> idx, const Multivector& m);

  Multivector operator()(std::span<const Vector> args) const;
  Multivector operator()(std::initializer_list<Vector> args) const { return (*this)(std::span<const Vector>(args.begin(), args.size())); }
};

// Ω^k(V) ⊂ Ω^k(Λ¹V): a vector-valued form read as a polyvector-valued one.
PolyForm as_poly(const VForm& f);
VForm as_vform(const PolyForm& f);

// Symmetric positive-definite bilinear form.
class InnerProduct {
 public:
  explicit InnerProduct(Matrix g);

  int dim() const noexcept { return static_cast<int>(g_.rows()); }
  const Matrix& matrix() const noexcept { return g_; }
  double operator()(const Vector& x, const Vector& y) const { return x.dot(g_ * y); }
  double norm2(const Vector& x) const { return (*this)(x, x); }
  Vector lower(const Vector& x) const { return g_ * x; }

 private:
  Matrix g_;
};

namespace detail {
// Multilinear contraction of the leading form slots of a block-structured
// array with the given vectors; returns the remaining value block.
std::vector<double> contract_leading(const DenseStorage& s, std::span<const Vector> args);
}  // namespace detail

}  // namespace acobs
