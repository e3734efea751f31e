#include <schrodnet/boundary.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schrodnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t > std::numbers::pi) t -= kTwoPi;
  if (t < -std::numbers::pi) t += kTwoPi;
  return t;
}

// Raised cosine with unit integral: (2/w) cos^2(pi d / w) on |d| < w/2.
double bump_value(double theta, double center, double width) {
  const double d = wrap_angle(theta - center);
  if (std::abs(d) >= 0.5 * width) return 0.0;
  const double c = std::cos(std::numbers::pi * d / width);
  return 2.0 / width * c * c;
}

}  // namespace

BoundaryFunctionSet BoundaryFunctionSet::raised_cosine(int n,
                                                       double width_fraction) {
  if (n < 2) throw std::invalid_argument("BoundaryFunctionSet: n too small");
  if (width_fraction <= 0.0 || width_fraction > 1.0)
    throw std::invalid_argument("BoundaryFunctionSet: bad width fraction");
  BoundaryFunctionSet out;
  const double width = width_fraction * kTwoPi / n;
  out.functions_.resize(n);
  for (int i = 0; i < n; ++i)
    out.functions_[i] = {{kTwoPi * i / n, width, 1.0}};
  return out;
}

BoundaryFunctionSet BoundaryFunctionSet::combine(
    const std::vector<std::vector<int>>& sets,
    const std::vector<std::vector<double>>& weights) const {
  if (sets.size() != weights.size())
    throw std::invalid_argument("combine: sets/weights size mismatch");
  BoundaryFunctionSet out;
  out.functions_.resize(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty() || sets[i].size() != weights[i].size())
      throw std::invalid_argument("combine: malformed lumping set");
    for (size_t k = 0; k < sets[i].size(); ++k)
      for (const Bump& b : functions_.at(sets[i][k]))
        out.functions_[i].push_back({b.center, b.width, weights[i][k] * b.coeff});
  }
  return out;
}

double BoundaryFunctionSet::evaluate(int i, double theta) const {
  double v = 0.0;
  for (const Bump& b : functions_.at(i))
    v += b.coeff * bump_value(theta, b.center, b.width);
  return v;
}

Matrix BoundaryFunctionSet::sample(int ntheta) const {
  const double dt = kTwoPi / ntheta;
  Matrix rows = Matrix::Zero(size(), ntheta);
  Vector samples(ntheta);
  for (int i = 0; i < size(); ++i) {
    for (const Bump& b : functions_[i]) {
      for (int k = 0; k < ntheta; ++k)
        samples(k) = bump_value((k + 0.5) * dt, b.center, b.width);
      const double mass = samples.sum() * dt;
      if (mass <= 0.0)
        throw std::runtime_error("boundary profile unresolved by grid");
      rows.row(i) += (b.coeff / mass) * samples.transpose();
    }
  }
  return rows;
}

}  // namespace schrodnet
