#include "acobs/products.hpp"

#include "acobs/index.hpp"

#include <algorithm>
#include <string>

namespace acobs {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b)
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

// Drives a graded product: for each increasing output tuple J, accumulates
// kernel(first, second, weight, acc) over S_m (permutation backend) or over
// (k, m−k) shuffles with the k!(m−k)! multiplicity folded into the weight
// (contraction backend), then scatters J's value over all its permutations.
template <class Kernel>
void assemble(detail::DenseStorage& out, int k, double prefactor, Backend backend, Kernel&& kernel) {
  if (out.vanishes_identically()) return;
  const int n = out.dim();
  const int m = out.degree();
  const auto& perms = backend == Backend::permutation ? index::permutations(m) : index::shuffles(k, m);
  const double multiplicity =
      backend == Backend::permutation ? 1.0 : index::factorial(k) * index::factorial(m - k);
  std::vector<int> a(static_cast<std::size_t>(m));
  std::vector<double> acc(out.value_size());
  for (const auto& inc : index::increasing_tuples(n, m)) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (const auto& p : perms) {
      for (std::size_t r = 0; r < a.size(); ++r) a[r] = inc[static_cast<std::size_t>(p.map[r])];
      const std::span<const int> first(a.data(), static_cast<std::size_t>(k));
      const std::span<const int> second(a.data() + k, static_cast<std::size_t>(m - k));
      kernel(first, second, p.sign * prefactor * multiplicity, std::span<double>(acc));
    }
    out.scatter(inc, acc);
  }
}

// acc += w · (P ∧ Q) for alternating value blocks of ranks j and l.
void accumulate_value_wedge(std::span<const double> pblk, std::span<const double> qblk, int n, int j, int l, double w,
                            Backend backend, std::span<double> acc) {
  const int q = j + l;
  const auto& perms = backend == Backend::permutation ? index::permutations(q) : index::shuffles(j, q);
  const double norm = backend == Backend::permutation ? 1.0 / (index::factorial(j) * index::factorial(l)) : 1.0;
  std::vector<int> a(static_cast<std::size_t>(q));
  std::vector<int> t(static_cast<std::size_t>(q));
  for (const auto& inc : index::increasing_tuples(n, q)) {
    double v = 0.0;
    for (const auto& p : perms) {
      for (std::size_t r = 0; r < a.size(); ++r) a[r] = inc[static_cast<std::size_t>(p.map[r])];
      v += p.sign * pblk[index::flat_offset(std::span<const int>(a.data(), static_cast<std::size_t>(j)), n)] *
           qblk[index::flat_offset(std::span<const int>(a.data() + j, static_cast<std::size_t>(l)), n)];
    }
    v *= norm * w;
    if (v == 0.0) continue;
    for (const auto& p : index::permutations(q)) {
      for (std::size_t r = 0; r < t.size(); ++r) t[r] = inc[static_cast<std::size_t>(p.map[r])];
      acc[index::flat_offset(t, n)] += p.sign * v;
    }
  }
}

}  // namespace

EndForm wedge_end(const EndForm& alpha, const EndForm& beta, Backend backend) {
  require_same_dim(alpha.dim(), beta.dim(), "wedge_end");
  const int n = alpha.dim();
  const int k = alpha.degree();
  const int l = beta.degree();
  EndForm out(n, k + l);
  const double pref = 1.0 / (index::factorial(k) * index::factorial(l));
  const auto& as = alpha.storage();
  const auto& bs = beta.storage();
  assemble(out.storage(), k, pref, backend, [&](auto first, auto second, double w, std::span<double> acc) {
    auto ab = as.block(first);
    auto bb = bs.block(second);
    for (int r = 0; r < n; ++r)
      for (int m = 0; m < n; ++m) {
        const double arm = w * ab[static_cast<std::size_t>(r * n + m)];
        if (arm == 0.0) continue;
        for (int c = 0; c < n; ++c) acc[static_cast<std::size_t>(r * n + c)] += arm * bb[static_cast<std::size_t>(m * n + c)];
      }
  });
  return out;
}

PolyForm wedge_poly(const PolyForm& gamma, const PolyForm& theta, Backend backend) {
  require_same_dim(gamma.dim(), theta.dim(), "wedge_poly");
  const int n = gamma.dim();
  const int i = gamma.degree();
  const int k = theta.degree();
  const int j = gamma.poly_degree();
  const int l = theta.poly_degree();
  PolyForm out(n, i + k, j + l);
  const double pref = 0.5 / (index::factorial(i) * index::factorial(k));
  const auto& gs = gamma.storage();
  const auto& ts = theta.storage();
  assemble(out.storage(), i, pref, backend, [&](auto first, auto second, double w, std::span<double> acc) {
    accumulate_value_wedge(gs.block(first), ts.block(second), n, j, l, w, backend, acc);
  });
  return out;
}

VForm act_left(const EndForm& alpha, const VForm& rho, Backend backend) {
  require_same_dim(alpha.dim(), rho.dim(), "act_left");
  const int n = alpha.dim();
  const int k = alpha.degree();
  const int s = rho.degree();
  VForm out(n, k + s);
  const double pref = 1.0 / (index::factorial(k) * index::factorial(s));
  const auto& as = alpha.storage();
  const auto& rs = rho.storage();
  assemble(out.storage(), k, pref, backend, [&](auto first, auto second, double w, std::span<double> acc) {
    auto ab = as.block(first);
    auto rb = rs.block(second);
    for (int r = 0; r < n; ++r) {
      double v = 0.0;
      for (int c = 0; c < n; ++c) v += ab[static_cast<std::size_t>(r * n + c)] * rb[static_cast<std::size_t>(c)];
      acc[static_cast<std::size_t>(r)] += w * v;
    }
  });
  return out;
}

VForm act_right(const VForm& rho, const PolyForm& gamma, Backend backend) {
  require_same_dim(rho.dim(), gamma.dim(), "act_right");
  const int n = rho.dim();
  const int s = rho.degree();
  const int i = gamma.degree();
  const int j = gamma.poly_degree();
  if (s < j) return VForm(n, std::max(s - j + i, 0));
  const int head = s - j;
  VForm out(n, head + i);
  const double pref = 1.0 / (index::factorial(head) * index::factorial(i));
  const auto& rs = rho.storage();
  const auto& gs = gamma.storage();
  std::vector<int> slots(static_cast<std::size_t>(s));

  assemble(out.storage(), head, pref, backend, [&](auto first, auto second, double w, std::span<double> acc) {
    auto gb = gs.block(second);
    std::copy(first.begin(), first.end(), slots.begin());
    // ρ(…, ·…·)(ζ) = (1/j!) Σ_{a ∈ [n]^j} ρ(…, e_a) ζ^a; the contraction backend
    // sums increasing a only, which is the same value for alternating ζ.
    auto apply = [&](std::span<const int> a, double c) {
      const double z = gb[index::flat_offset(a, n)];
      if (z == 0.0) return;
      std::copy(a.begin(), a.end(), slots.begin() + head);
      auto rb = rs.block(slots);
      for (int r = 0; r < n; ++r) acc[static_cast<std::size_t>(r)] += w * c * z * rb[static_cast<std::size_t>(r)];
    };
    if (backend == Backend::permutation) {
      const double c = 1.0 / index::factorial(j);
      index::for_each_tuple(n, j, [&](std::span<const int> a) { apply(a, c); });
    } else {
      for (const auto& a : index::increasing_tuples(n, j)) apply(a, 1.0);
    }
  });
  return out;
}

ScalarForm wedge_g(const VForm& alpha, const VForm& beta, const InnerProduct& g, Backend backend) {
  require_same_dim(alpha.dim(), beta.dim(), "wedge_g");
  require_same_dim(alpha.dim(), g.dim(), "wedge_g metric");
  const int n = alpha.dim();
  const int k = alpha.degree();
  const int l = beta.degree();
  ScalarForm out(n, k + l);
  const double pref = 1.0 / (index::factorial(k) * index::factorial(l));
  const auto& as = alpha.storage();
  const auto& gm = g.matrix();

  if (backend == Backend::permutation) {
    const auto& bs = beta.storage();
    assemble(out.storage(), k, pref, backend, [&](auto first, auto second, double w, std::span<double> acc) {
      auto ab = as.block(first);
      auto bb = bs.block(second);
      double v = 0.0;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) v += ab[static_cast<std::size_t>(r)] * gm(r, c) * bb[static_cast<std::size_t>(c)];
      acc[0] += w * v;
    });
    return out;
  }

  // Lower β's value index once; each shuffle term is then a length-n dot.
  VForm lowered(n, l);
  if (!lowered.storage().vanishes_identically()) {
    auto src = beta.storage().raw();
    auto dst = lowered.storage().raw();
    for (std::size_t off = 0; off < src.size(); off += static_cast<std::size_t>(n)) {
      Eigen::Map<const Vector> v(src.data() + off, n);
      Eigen::Map<Vector>(dst.data() + off, n).noalias() = gm * v;
    }
  }
  const auto& ls = lowered.storage();
  assemble(out.storage(), k, pref, backend, [&](auto first, auto second, double w, std::span<double> acc) {
    auto ab = as.block(first);
    auto lb = ls.block(second);
    double v = 0.0;
    for (int r = 0; r < n; ++r) v += ab[static_cast<std::size_t>(r)] * lb[static_cast<std::size_t>(r)];
    acc[0] += w * v;
  });
  return out;
}

ScalarForm wedge_scalar(const ScalarForm& omega, const ScalarForm& eta, Backend backend) {
  require_same_dim(omega.dim(), eta.dim(), "wedge_scalar");
  const int k = omega.degree();
  const int l = eta.degree();
  ScalarForm out(omega.dim(), k + l);
  const double pref = 1.0 / (index::factorial(k) * index::factorial(l));
  const auto& os = omega.storage();
  const auto& es = eta.storage();
  assemble(out.storage(), k, pref, backend, [&](auto first, auto second, double w, std::span<double> acc) {
    acc[0] += w * os.block(first)[0] * es.block(second)[0];
  });
  return out;
}

Multivector p_extend(const VForm& p, const Multivector& zeta) {
  require_same_dim(p.dim(), zeta.dim(), "p_extend");
  if (p.degree() != 2) throw DimensionError("p_extend needs a vector-valued 2-form");
  const int n = p.dim();
  const int top = zeta.poly_degree();
  if (top < 1) throw DimensionError("p_extend needs a polyvector of degree ≥ 1");
  Multivector out(n, top - 1);
  if (out.storage().vanishes_identically() || zeta.storage().vanishes_identically()) return out;
  std::vector<int> rest;
  for (const auto& a : index::increasing_tuples(n, top)) {
    const double coeff = zeta.component(a);
    if (coeff == 0.0) continue;
    for (int i = 0; i < top; ++i) {
      for (int j = i + 1; j < top; ++j) {
        // (−1)^{i+j+1} has the same parity for 0- and 1-based positions
        const double sign = ((i + j + 1) % 2 == 0) ? 1.0 : -1.0;
        const int pair[2] = {a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]};
        Multivector term = Multivector::from_vector(p.component(pair));
        rest.clear();
        for (int r = 0; r < top; ++r)
          if (r != i && r != j) rest.push_back(a[static_cast<std::size_t>(r)]);
        if (!rest.empty()) term = wedge(term, Multivector::basis(n, rest));
        out += (sign * coeff) * term;
      }
    }
  }
  return out;
}

Vector p_squared(const VForm& p, const Vector& x, const Vector& y, const Vector& z) {
  if (p.degree() != 2) throw DimensionError("p_squared needs a vector-valued 2-form");
  require_same_dim(p.dim(), static_cast<int>(x.size()), "p_squared");
  require_same_dim(p.dim(), static_cast<int>(y.size()), "p_squared");
  require_same_dim(p.dim(), static_cast<int>(z.size()), "p_squared");
  return p({p({x, y}), z}) - p({p({x, z}), y}) + p({p({y, z}), x});
}

}  // namespace acobs
