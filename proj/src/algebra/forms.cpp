#include "acobs/forms.hpp"

#include "acobs/index.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace acobs {

namespace detail {

DenseStorage::DenseStorage(int dim, int degree, int value_rank, bool alternating_value)
    : dim_(dim), degree_(degree), value_rank_(value_rank), alternating_value_(alternating_value) {
  if (dim < 1 || dim > index::kMaxDim)
    throw DimensionError("dimension " + std::to_string(dim) + " outside [1, " + std::to_string(index::kMaxDim) + "]");
  if (degree < 0 || value_rank < 0) throw DimensionError("negative degree");
  vanishes_ = degree > dim || (alternating_value && value_rank > dim);
  value_size_ = vanishes_ ? 1 : index::power(dim, value_rank);
  const std::size_t blocks = vanishes_ ? 1 : index::power(dim, degree);
  data_.assign(blocks * value_size_, 0.0);
}

std::span<const double> DenseStorage::block(std::span<const int> form_idx) const {
  if (vanishes_) return {data_.data(), value_size_};
  return {data_.data() + index::flat_offset(form_idx, dim_) * value_size_, value_size_};
}

std::span<double> DenseStorage::block(std::span<const int> form_idx) {
  if (vanishes_) throw DimensionError("cannot write into an identically vanishing form");
  return {data_.data() + index::flat_offset(form_idx, dim_) * value_size_, value_size_};
}

void DenseStorage::scatter(std::span<const int> increasing, std::span<const double> value) {
  if (vanishes_) return;
  std::vector<int> idx(increasing.size());
  for (const auto& p : index::permutations(static_cast<int>(increasing.size()))) {
    for (std::size_t r = 0; r < idx.size(); ++r) idx[r] = increasing[static_cast<std::size_t>(p.map[r])];
    auto dst = block(idx);
    for (std::size_t v = 0; v < value_size_; ++v) dst[v] = p.sign * value[v];
  }
}

namespace {

// Alternating projection of one value block in place (rank q tensor).
void alternate_block(std::span<double> blk, int n, int q) {
  std::vector<double> out(blk.size(), 0.0);
  const double norm = 1.0 / index::factorial(q);
  std::vector<int> idx(static_cast<std::size_t>(q));
  for (const auto& inc : index::increasing_tuples(n, q)) {
    double acc = 0.0;
    for (const auto& p : index::permutations(q)) {
      for (int r = 0; r < q; ++r) idx[static_cast<std::size_t>(r)] = inc[static_cast<std::size_t>(p.map[static_cast<std::size_t>(r)])];
      acc += p.sign * blk[index::flat_offset(idx, n)];
    }
    acc *= norm;
    for (const auto& p : index::permutations(q)) {
      for (int r = 0; r < q; ++r) idx[static_cast<std::size_t>(r)] = inc[static_cast<std::size_t>(p.map[static_cast<std::size_t>(r)])];
      out[index::flat_offset(idx, n)] = p.sign * acc;
    }
  }
  std::copy(out.begin(), out.end(), blk.begin());
}

double block_alternation_residual(std::span<const double> blk, int n, int q) {
  double worst = 0.0;
  index::for_each_tuple(n, q, [&](std::span<const int> t) {
    std::vector<int> sorted(t.begin(), t.end());
    const int sign = index::sort_with_sign(sorted);
    const double v = blk[index::flat_offset(t, n)];
    const double expected = sign == 0 ? 0.0 : sign * blk[index::flat_offset(sorted, n)];
    worst = std::max(worst, std::abs(v - expected));
  });
  return worst;
}

}  // namespace

void DenseStorage::antisymmetrize() {
  if (vanishes_) {
    std::fill(data_.begin(), data_.end(), 0.0);
    return;
  }
  std::vector<double> out(data_.size(), 0.0);
  const double norm = 1.0 / index::factorial(degree_);
  std::vector<int> idx(static_cast<std::size_t>(degree_));
  std::vector<double> acc(value_size_);
  for (const auto& inc : index::increasing_tuples(dim_, degree_)) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (const auto& p : index::permutations(degree_)) {
      for (std::size_t r = 0; r < idx.size(); ++r) idx[r] = inc[static_cast<std::size_t>(p.map[r])];
      auto src = block(idx);
      for (std::size_t v = 0; v < value_size_; ++v) acc[v] += p.sign * src[v];
    }
    for (double& a : acc) a *= norm;
    if (alternating_value_) alternate_block(acc, dim_, value_rank_);
    for (const auto& p : index::permutations(degree_)) {
      for (std::size_t r = 0; r < idx.size(); ++r) idx[r] = inc[static_cast<std::size_t>(p.map[r])];
      const std::size_t off = index::flat_offset(idx, dim_) * value_size_;
      for (std::size_t v = 0; v < value_size_; ++v) out[off + v] = p.sign * acc[v];
    }
  }
  data_ = std::move(out);
}

double DenseStorage::antisymmetry_residual() const {
  if (vanishes_) return 0.0;
  double worst = 0.0;
  index::for_each_tuple(dim_, degree_, [&](std::span<const int> t) {
    std::vector<int> sorted(t.begin(), t.end());
    const int sign = index::sort_with_sign(sorted);
    auto blk = block(t);
    auto ref = block(sorted);
    for (std::size_t v = 0; v < value_size_; ++v) {
      const double expected = sign == 0 ? 0.0 : sign * ref[v];
      worst = std::max(worst, std::abs(blk[v] - expected));
    }
    if (alternating_value_) worst = std::max(worst, block_alternation_residual(blk, dim_, value_rank_));
  });
  return worst;
}

void DenseStorage::check_compatible(const DenseStorage& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_ || value_rank_ != o.value_rank_ || alternating_value_ != o.alternating_value_)
    throw DimensionError("incompatible form shapes");
}

std::vector<double> contract_leading(const DenseStorage& s, std::span<const Vector> args) {
  const int n = s.dim();
  if (static_cast<int>(args.size()) != s.degree())
    throw DimensionError("expected " + std::to_string(s.degree()) + " arguments, got " + std::to_string(args.size()));
  for (const auto& a : args)
    if (a.size() != n) throw DimensionError("argument vector has wrong dimension");
  if (s.vanishes_identically()) return std::vector<double>(s.value_size(), 0.0);

  std::vector<double> cur(s.raw().begin(), s.raw().end());
  std::size_t tail = index::power(n, s.degree() - 1) * s.value_size();
  for (const auto& a : args) {
    std::vector<double> next(tail, 0.0);
    for (int i = 0; i < n; ++i) {
      const double w = a(i);
      if (w == 0.0) continue;
      const double* src = cur.data() + static_cast<std::size_t>(i) * tail;
      for (std::size_t t = 0; t < tail; ++t) next[t] += w * src[t];
    }
    cur = std::move(next);
    if (tail >= static_cast<std::size_t>(n) * s.value_size()) tail /= static_cast<std::size_t>(n);
  }
  return cur;
}

}  // namespace detail

// --- Multivector -----------------------------------------------------------

Multivector::Multivector(int dim, int degree) : FormBase(detail::DenseStorage(dim, 0, degree, true)) {}

Multivector Multivector::scalar(int dim, double value) {
  Multivector m(dim, 0);
  m.data()[0] = value;
  return m;
}

Multivector Multivector::from_vector(const Vector& v) {
  Multivector m(static_cast<int>(v.size()), 1);
  for (int i = 0; i < v.size(); ++i) m.data()[static_cast<std::size_t>(i)] = v(i);
  return m;
}

Multivector Multivector::wedge_of(std::span<const Vector> vs) {
  if (vs.empty()) throw DimensionError("wedge_of needs at least one vector");
  Multivector acc = from_vector(vs[0]);
  for (std::size_t i = 1; i < vs.size(); ++i) acc = wedge(acc, from_vector(vs[i]));
  return acc;
}

Multivector Multivector::basis(int dim, std::span<const int> increasing) {
  Multivector m(dim, static_cast<int>(increasing.size()));
  if (m.s_.vanishes_identically()) return m;
  std::vector<int> idx(increasing.begin(), increasing.end());
  if (index::sort_with_sign(idx) != 1) throw DimensionError("basis multivector needs a strictly increasing tuple");
  std::vector<int> tmp(idx.size());
  for (const auto& p : index::permutations(static_cast<int>(idx.size()))) {
    for (std::size_t r = 0; r < idx.size(); ++r) tmp[r] = idx[static_cast<std::size_t>(p.map[r])];
    m.data()[index::flat_offset(tmp, dim)] = p.sign;
  }
  return m;
}

double Multivector::component(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != poly_degree()) throw DimensionError("multivector index has wrong length");
  if (s_.vanishes_identically()) return 0.0;
  return data()[index::flat_offset(idx, dim())];
}

Multivector wedge(const Multivector& p, const Multivector& q) {
  if (p.dim() != q.dim()) throw DimensionError("wedge of multivectors of different dimension");
  const int n = p.dim();
  const int j = p.poly_degree();
  const int l = q.poly_degree();
  Multivector out(n, j + l);
  if (out.storage().vanishes_identically()) return out;
  const double pref = 1.0 / (index::factorial(j) * index::factorial(l));
  std::vector<int> a(static_cast<std::size_t>(j + l));
  auto pd = p.data();
  auto qd = q.data();
  for (const auto& inc : index::increasing_tuples(n, j + l)) {
    double acc = 0.0;
    for (const auto& perm : index::permutations(j + l)) {
      for (std::size_t r = 0; r < a.size(); ++r) a[r] = inc[static_cast<std::size_t>(perm.map[r])];
      const std::span<const int> head(a.data(), static_cast<std::size_t>(j));
      const std::span<const int> rest(a.data() + j, static_cast<std::size_t>(l));
      acc += perm.sign * pd[index::flat_offset(head, n)] * qd[index::flat_offset(rest, n)];
    }
    const double v = pref * acc;
    std::vector<int> tmp(a.size());
    for (const auto& perm : index::permutations(j + l)) {
      for (std::size_t r = 0; r < tmp.size(); ++r) tmp[r] = inc[static_cast<std::size_t>(perm.map[r])];
      out.data()[index::flat_offset(tmp, n)] = perm.sign * v;
    }
  }
  return out;
}

// --- ScalarForm ------------------------------------------------------------

ScalarForm::ScalarForm(int dim, int degree) : FormBase(detail::DenseStorage(dim, degree, 0, false)) {}

void ScalarForm::set(std::span<const int> idx, double v) {
  std::vector<int> sorted(idx.begin(), idx.end());
  const int sign = index::sort_with_sign(sorted);
  if (sign == 0) throw DimensionError("repeated index in alternating form");
  const double val = sign * v;
  s_.scatter(sorted, std::span<const double>(&val, 1));
}

double ScalarForm::operator()(std::span<const Vector> args) const { return detail::contract_leading(s_, args)[0]; }

// --- VForm -----------------------------------------------------------------

VForm::VForm(int dim, int degree) : FormBase(detail::DenseStorage(dim, degree, 1, false)) {}

VForm VForm::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("from_matrix needs a square matrix");
  const int n = static_cast<int>(m.rows());
  VForm f(n, 1);
  for (int b = 0; b < n; ++b) {
    const int idx[1] = {b};
    auto blk = f.s_.block(idx);
    for (int a = 0; a < n; ++a) blk[static_cast<std::size_t>(a)] = m(a, b);
  }
  return f;
}

VForm VForm::from_vector(const Vector& v) {
  VForm f(static_cast<int>(v.size()), 0);
  auto blk = f.s_.block({});
  for (int a = 0; a < v.size(); ++a) blk[static_cast<std::size_t>(a)] = v(a);
  return f;
}

Matrix VForm::as_matrix() const {
  if (degree() != 1) throw DimensionError("as_matrix needs a degree-1 form");
  const int n = dim();
  Matrix m(n, n);
  for (int b = 0; b < n; ++b) m.col(b) = component({b});
  return m;
}

Vector VForm::component(std::span<const int> idx) const {
  auto blk = s_.block(idx);
  return Eigen::Map<const Vector>(blk.data(), static_cast<Eigen::Index>(blk.size()));
}

void VForm::set(std::span<const int> idx, const Vector& v) {
  std::vector<int> sorted(idx.begin(), idx.end());
  const int sign = index::sort_with_sign(sorted);
  if (sign == 0) throw DimensionError("repeated index in alternating form");
  const Vector val = sign * v;
  s_.scatter(sorted, std::span<const double>(val.data(), static_cast<std::size_t>(val.size())));
}

Vector VForm::operator()(std::span<const Vector> args) const {
  const auto v = detail::contract_leading(s_, args);
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// --- EndForm ---------------------------------------------------------------

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EndForm::EndForm(int dim, int degree) : FormBase(detail::DenseStorage(dim, degree, 2, false)) {}

EndForm EndForm::from_matrix(const Matrix& m) {
  EndForm f(static_cast<int>(m.rows()), 0);
  f.set({}, m);
  return f;
}

Matrix EndForm::component(std::span<const int> idx) const {
  auto blk = s_.block(idx);
  return Eigen::Map<const RowMajor>(blk.data(), dim(), dim());
}

void EndForm::set(std::span<const int> idx, const Matrix& m) {
  std::vector<int> sorted(idx.begin(), idx.end());
  const int sign = index::sort_with_sign(sorted);
  if (sign == 0) throw DimensionError("repeated index in alternating form");
  const RowMajor val = sign * m;
  s_.scatter(sorted, std::span<const double>(val.data(), static_cast<std::size_t>(val.size())));
}

Matrix EndForm::operator()(std::span<const Vector> args) const {
  const auto v = detail::contract_leading(s_, args);
  return Eigen::Map<const RowMajor>(v.data(), dim(), dim());
}

// --- PolyForm --------------------------------------------------------------

PolyForm::PolyForm(int dim, int degree, int poly_degree) : FormBase(detail::DenseStorage(dim, degree, poly_degree, true)) {}

Multivector PolyForm::component(std::span<const int> idx) const {
  Multivector m(dim(), poly_degree());
  if (m.storage().vanishes_identically()) return m;
  auto blk = s_.block(idx);
  std::copy(blk.begin(), blk.end(), m.data().begin());
  return m;
}

void PolyForm::set(std::span<const int> idx, const Multivector& m) {
  if (m.dim() != dim() || m.poly_degree() != poly_degree()) throw DimensionError("multivector shape mismatch");
  std::vector<int> sorted(idx.begin(), idx.end());
  const int sign = index::sort_with_sign(sorted);
  if (sign == 0) throw DimensionError("repeated index in alternating form");
  std::vector<double> val(m.data().begin(), m.data().end());
  for (double& v : val) v *= sign;
  s_.scatter(sorted, val);
}

Multivector PolyForm::operator()(std::span<const Vector> args) const {
  const auto v = detail::contract_leading(s_, args);
  Multivector m(dim(), poly_degree());
  if (!m.storage().vanishes_identically()) std::copy(v.begin(), v.end(), m.data().begin());
  return m;
}

PolyForm as_poly(const VForm& f) {
  PolyForm p(f.dim(), f.degree(), 1);
  auto src = f.storage().raw();
  auto dst = p.storage().raw();
  std::copy(src.begin(), src.end(), dst.begin());
  return p;
}

VForm as_vform(const PolyForm& f) {
  if (f.poly_degree() != 1) throw DimensionError("as_vform needs polyvector degree 1");
  VForm v(f.dim(), f.degree());
  auto src = f.storage().raw();
  auto dst = v.storage().raw();
  std::copy(src.begin(), src.end(), dst.begin());
  return v;
}

// --- InnerProduct ----------------------------------------------------------

InnerProduct::InnerProduct(Matrix g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols()) throw DimensionError("inner product matrix must be square");
  const double scale = std::max(1.0, g_.cwiseAbs().maxCoeff());
  if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw NotPositiveDefinite("inner product matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g_, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0)
    throw NotPositiveDefinite("inner product matrix is not positive-definite");
}

}  // namespace acobs
