#pragma once

#include "acobs/dual.hpp"
#include "acobs/forms.hpp"

#include <functional>
#include <random>
#include <string>

namespace acobs {

// Writes g_ij and A^a_b (row-major, n×n each) at coordinates x.
template <class T>
using FieldFn = std::function<void(const T* x, T* g, T* a)>;

struct Box {
  std::vector<double> lo, hi;
};

// A coordinate patch with closed-form metric and almost-complex fields.
// The evaluators are one generic function instantiated at three scalar types,
// so first and second partials come from nested forward-mode duals.
class Chart {
 public:
  template <class F>
  static Chart make(std::string name, int dim, F fields, Box sampling,
                    std::function<bool(const Vector&)> accept = nullptr) {
    Chart c;
    c.name_ = std::move(name);
    c.dim_ = dim;
    c.f0_ = [fields](const double* x, double* g, double* a) { fields(x, g, a); };
    c.f1_ = [fields](const Dual1* x, Dual1* g, Dual1* a) { fields(x, g, a); };
    c.f2_ = [fields](const Dual2* x, Dual2* g, Dual2* a) { fields(x, g, a); };
    c.sampling_ = std::move(sampling);
    c.accept_ = std::move(accept);
    return c;
  }

  // New chart whose fields are `transform` applied to this chart's fields.
  // transform(x, g, a) rewrites g and a in place.
  template <class F>
  Chart transformed(std::string name, F transform) const {
    Chart c = *this;
    c.name_ = std::move(name);
    auto f0 = f0_;
    auto f1 = f1_;
    auto f2 = f2_;
    c.f0_ = [f0, transform](const double* x, double* g, double* a) { f0(x, g, a), transform(x, g, a); };
    c.f1_ = [f1, transform](const Dual1* x, Dual1* g, Dual1* a) { f1(x, g, a), transform(x, g, a); };
    c.f2_ = [f2, transform](const Dual2* x, Dual2* g, Dual2* a) { f2(x, g, a), transform(x, g, a); };
    return c;
  }

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  const Box& sampling_box() const noexcept { return sampling_; }

  bool accepts(const Vector& x) const;

  // Uniform in the sampling box, rejecting points the chart refuses.
  Vector sample(std::mt19937_64& rng) const;

  void eval(const double* x, double* g, double* a) const { f0_(x, g, a); }
  void eval(const Dual1* x, Dual1* g, Dual1* a) const { f1_(x, g, a); }
  void eval(const Dual2* x, Dual2* g, Dual2* a) const { f2_(x, g, a); }

  Matrix metric(const Vector& x) const;
  Matrix structure(const Vector& x) const;

 private:
  std::string name_;
  int dim_ = 0;
  FieldFn<double> f0_;
  FieldFn<Dual1> f1_;
  FieldFn<Dual2> f2_;
  Box sampling_;
  std::function<bool(const Vector&)> accept_;
};

}  // namespace acobs
