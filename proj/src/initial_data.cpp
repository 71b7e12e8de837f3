#include "ringnet/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ringnet {

Segment Segment::poly(double lo, double hi, std::vector<double> coeffs) {
  if (coeffs.size() > 9) throw std::invalid_argument("Segment: polynomial degree above 8");
  Segment s;
  s.kind = Kind::Poly;
  s.lo = lo;
  s.hi = hi;
  s.coeffs = std::move(coeffs);
  if (s.coeffs.empty()) s.coeffs.push_back(0.0);
  return s;
}

Segment Segment::bump(double lo, double hi, double height) {
  Segment s;
  s.kind = Kind::Bump;
  s.lo = lo;
  s.hi = hi;
  s.height = height;
  return s;
}

double Segment::eval(double x) const {
  if (kind == Kind::Poly) {
    const double s = x - lo;
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * s + coeffs[k];
    return acc;
  }
  const double u = (2.0 * x - lo - hi) / (hi - lo);
  if (u * u >= 1.0) return 0.0;
  return height * std::exp(-1.0 / (1.0 - u * u));
}

InitialData::InitialData(const Network& net, std::vector<std::vector<Segment>> circles)
    : circles_(std::move(circles)) {
  if (static_cast<int>(circles_.size()) != net.n)
    throw std::invalid_argument("InitialData: one segment list per circle required");
  for (int i = 0; i < net.n; ++i) {
    const auto& segs = circles_[static_cast<std::size_t>(i)];
    if (segs.empty()) throw std::invalid_argument("InitialData: empty circle");
    const double li = net.length(i);
    const double tol = 1e-9 * std::max(1.0, li);
    if (std::abs(segs.front().lo) > tol || std::abs(segs.back().hi - li) > tol)
      throw std::invalid_argument("InitialData: segments must span [0, L_i]");
    for (std::size_t k = 0; k < segs.size(); ++k) {
      if (!(segs[k].hi > segs[k].lo)) throw std::invalid_argument("InitialData: empty segment");
      if (k > 0 && std::abs(segs[k].lo - segs[k - 1].hi) > tol)
        throw std::invalid_argument("InitialData: segments must tile without gaps");
    }
  }
}

InitialData InitialData::constant(const Network& net, double value) {
  std::vector<std::vector<Segment>> circles;
  for (int i = 0; i < net.n; ++i)
    circles.push_back({Segment::poly(0.0, net.length(i), {value})});
  return InitialData(net, std::move(circles));
}

InitialData InitialData::single_bump(const Network& net, const std::vector<double>& lo,
                                     const std::vector<double>& hi,
                                     const std::vector<double>& height) {
  std::vector<std::vector<Segment>> circles;
  for (int i = 0; i < net.n; ++i) {
    const double li = net.length(i);
    const std::size_t k = static_cast<std::size_t>(i);
    std::vector<Segment> segs;
    if (lo[k] > 0.0) segs.push_back(Segment::poly(0.0, lo[k], {0.0}));
    segs.push_back(Segment::bump(lo[k], hi[k], height[k]));
    if (hi[k] < li) segs.push_back(Segment::poly(hi[k], li, {0.0}));
    circles.push_back(std::move(segs));
  }
  return InitialData(net, std::move(circles));
}

InitialData InitialData::bump_comb(const Network& net, double ell, double support_lo,
                                   double support_hi, double height) {
  if (!(0.0 <= support_lo && support_lo < support_hi && support_hi <= ell))
    throw std::invalid_argument("bump_comb: support must lie inside one cell");
  std::vector<std::vector<Segment>> circles;
  for (int i = 0; i < net.n; ++i) {
    const double li = net.length(i);
    const long cells = std::lround(li / ell);
    if (std::abs(cells * ell - li) > 1e-9 * li)
      throw std::invalid_argument("bump_comb: circle length not a multiple of ell");
    std::vector<Segment> segs;
    for (long k = 0; k < cells; ++k) {
      const double base = static_cast<double>(k) * ell;
      if (support_lo > 0.0) segs.push_back(Segment::poly(base, base + support_lo, {0.0}));
      segs.push_back(Segment::bump(base + support_lo, base + support_hi, height));
      if (support_hi < ell) segs.push_back(Segment::poly(base + support_hi, base + ell, {0.0}));
    }
    circles.push_back(std::move(segs));
  }
  return InitialData(net, std::move(circles));
}

double InitialData::eval(int i, double x) const {
  const auto& segs = circles_[static_cast<std::size_t>(i)];
  // Clamp tiny excursions caused by rounding at the domain edges.
  if (x <= segs.front().lo) return segs.front().eval(segs.front().lo);
  if (x >= segs.back().hi) return segs.back().eval(segs.back().hi);
  // Binary search over segment starts.
  std::size_t lo = 0, hi = segs.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (segs[mid].lo <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return segs[lo].eval(x);
}

std::vector<double> InitialData::endpoints(int i) const {
  std::vector<double> pts;
  for (const auto& s : circles_[static_cast<std::size_t>(i)]) pts.push_back(s.lo);
  pts.push_back(circles_[static_cast<std::size_t>(i)].back().hi);
  return pts;
}

double check_compatibility(const InitialData& z0, const Network& net) {
  double worst = 0.0;
  for (int i = 0; i < net.n; ++i) {
    double junction = 0.0;
    for (int j = 0; j < net.n; ++j) junction += net.m(i, j) * z0.eval(j, net.length(j));
    worst = std::max(worst, std::abs(z0.eval(i, 0.0) - junction));
  }
  return worst;
}

}  // namespace ringnet
