#include "dd/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dd/hull_lp.hpp"

namespace dd {

// ---------------------------------------------------------------- Point

Point::Point(std::vector<double> coords) : c_(std::move(coords)) {
  for (double v : c_)
    if (!std::isfinite(v)) throw InputError("Point: non-finite coordinate");
}

double Point::norm() const {
  double s = 0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

double Point::dot(const Point& o) const {
  if (o.dim() != dim()) throw InputError("Point::dot: dimension mismatch");
  double s = 0;
  for (int i = 0; i < dim(); ++i) s += c_[i] * o.c_[i];
  return s;
}

Point Point::normalized() const {
  double n = norm();
  if (n < 1e-300) throw InputError("Point::normalized: zero vector");
  return (1.0 / n) * (*this);
}

Point operator+(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw InputError("Point: dimension mismatch in +");
  std::vector<double> c(a.c_);
  for (int i = 0; i < b.dim(); ++i) c[i] += b.c_[i];
  return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw InputError("Point: dimension mismatch in -");
  std::vector<double> c(a.c_);
  for (int i = 0; i < b.dim(); ++i) c[i] -= b.c_[i];
  return Point(std::move(c));
}

Point operator*(double s, const Point& p) {
  std::vector<double> c(p.c_);
  for (double& v : c) v *= s;
  return Point(std::move(c));
}

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.coords().begin(), a.coords().end(),
                                      b.coords().begin(), b.coords().end());
}

std::string to_string(const Point& p) {
  std::string s = "(";
  for (int i = 0; i < p.dim(); ++i) {
    if (i) s += ", ";
    s += fmt17(p[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------- Domain

Domain Domain::box(Point lo, Point hi) {
  if (lo.dim() != hi.dim() || lo.dim() == 0)
    throw InputError("Domain::box: bad corner dimensions");
  for (int i = 0; i < lo.dim(); ++i)
    if (lo[i] > hi[i]) throw InputError("Domain::box: lo > hi");
  Domain d;
  d.shape_ = Box{std::move(lo), std::move(hi)};
  return d;
}

Domain Domain::ball(Point center, double radius) {
  if (center.dim() == 0 || !(radius >= 0) || !std::isfinite(radius))
    throw InputError("Domain::ball: bad center or radius");
  Domain d;
  d.shape_ = Ball{std::move(center), radius};
  return d;
}

Domain Domain::hull_of(std::vector<Point> points) {
  if (points.empty()) throw InputError("Domain::hull_of: empty point set");
  int n = points[0].dim();
  for (const Point& p : points)
    if (p.dim() != n) throw InputError("Domain::hull_of: mixed dimensions");
  Domain d;
  d.shape_ = HullOfPoints{std::move(points)};
  return d;
}

void Domain::set_tolerance(double tol) {
  if (!(tol > 0)) throw InputError("Domain: tolerance must be positive");
  tol_ = tol;
}

int Domain::dim() const {
  if (const Box* b = std::get_if<Box>(&shape_)) return b->lo.dim();
  if (const Ball* b = std::get_if<Ball>(&shape_)) return b->center.dim();
  return std::get<HullOfPoints>(shape_).points[0].dim();
}

bool Domain::contains(const Point& x) const {
  if (x.dim() != dim()) throw InputError("Domain::contains: dimension mismatch");
  if (const Box* b = std::get_if<Box>(&shape_)) {
    for (int i = 0; i < x.dim(); ++i)
      if (x[i] < b->lo[i] - tol_ || x[i] > b->hi[i] + tol_) return false;
    return true;
  }
  if (const Ball* b = std::get_if<Ball>(&shape_))
    return x.dist(b->center) <= b->radius + tol_;
  const HullOfPoints& h = std::get<HullOfPoints>(shape_);
  if (dim() == 1) {
    double lo = h.points[0][0], hi = lo;
    for (const Point& p : h.points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return x[0] >= lo - tol_ && x[0] <= hi + tol_;
  }
  return hull_membership_residual(h.points, x) <= std::max(tol_, 1e-8);
}

bool Domain::contains_ball(const Point& center, double r) const {
  if (center.dim() != dim())
    throw InputError("Domain::contains_ball: dimension mismatch");
  if (r < 0) throw InputError("Domain::contains_ball: negative radius");
  if (const Box* b = std::get_if<Box>(&shape_)) {
    for (int i = 0; i < center.dim(); ++i)
      if (center[i] - r < b->lo[i] - tol_ || center[i] + r > b->hi[i] + tol_)
        return false;
    return true;
  }
  if (const Ball* b = std::get_if<Ball>(&shape_))
    return center.dist(b->center) + r <= b->radius + tol_;
  const HullOfPoints& h = std::get<HullOfPoints>(shape_);
  int n = dim();
  if (n == 1) {
    double lo = h.points[0][0], hi = lo;
    for (const Point& p : h.points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return center[0] - r >= lo - tol_ && center[0] + r <= hi + tol_;
  }
  // Probe sphere points; an approximation for curved hull boundaries but
  // exact enough for the convex polytopes we use.
  std::vector<Point> probes;
  if (n == 2) {
    for (int j = 0; j < 64; ++j) {
      double th = 2.0 * M_PI * j / 64;
      probes.push_back(Point({std::cos(th), std::sin(th)}));
    }
  } else {
    // Fibonacci sphere; also covers n > 3 with axis probes appended below.
    if (n == 3) {
      const double ga = M_PI * (3.0 - std::sqrt(5.0));
      for (int j = 0; j < 128; ++j) {
        double z = 1.0 - (2.0 * j + 1.0) / 128.0;
        double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
        probes.push_back(Point({rr * std::cos(ga * j), rr * std::sin(ga * j), z}));
      }
    }
    for (int i = 0; i < n; ++i)
      for (double s : {1.0, -1.0}) {
        Point u = Point::zeros(n);
        u[i] = s;
        probes.push_back(u);
      }
  }
  for (const Point& u : probes)
    if (!contains(center + r * u)) return false;
  return true;
}

Box Domain::bounding_box() const {
  if (const Box* b = std::get_if<Box>(&shape_)) return *b;
  if (const Ball* b = std::get_if<Ball>(&shape_)) {
    Point lo = b->center, hi = b->center;
    for (int i = 0; i < lo.dim(); ++i) {
      lo[i] -= b->radius;
      hi[i] += b->radius;
    }
    return Box{lo, hi};
  }
  const HullOfPoints& h = std::get<HullOfPoints>(shape_);
  Point lo = h.points[0], hi = h.points[0];
  for (const Point& p : h.points)
    for (int i = 0; i < p.dim(); ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  return Box{lo, hi};
}

double Domain::enclosing_radius() const {
  Box bb = bounding_box();
  double s = 0;
  for (int i = 0; i < bb.lo.dim(); ++i) {
    double half = 0.5 * (bb.hi[i] - bb.lo[i]);
    s += half * half;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------- SampleCloud

SampleCloud::SampleCloud(std::vector<Point> points, std::vector<double> values) {
  if (points.empty()) throw InputError("SampleCloud: need at least one sample");
  if (points.size() != values.size())
    throw InputError("SampleCloud: points/values length mismatch");
  dim_ = points[0].dim();
  for (const Point& p : points)
    if (p.dim() != dim_) throw InputError("SampleCloud: mixed dimensions");
  for (double v : values)
    if (!std::isfinite(v)) throw InputError("SampleCloud: non-finite value");
  // Merge near-duplicate points, keeping the lower value (an infimum).
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dup = false;
    for (std::size_t k = 0; k < points_.size(); ++k) {
      if (points[i].dist(points_[k]) < kDuplicateTol) {
        values_[k] = std::min(values_[k], values[i]);
        dup = true;
        break;
      }
    }
    if (!dup) {
      points_.push_back(points[i]);
      values_.push_back(values[i]);
    }
  }
}

double SampleCloud::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double SampleCloud::value_range() const {
  auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  return *hi - *lo;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, int line_no) {
  double v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  while (ptr != last && (*ptr == ' ' || *ptr == '\t')) ++ptr;
  if (ec != std::errc{} || ptr != last)
    throw InputError("CSV: malformed number '" + s + "' on line " +
                     std::to_string(line_no));
  return v;
}

}  // namespace

SampleCloud SampleCloud::read_csv(std::istream& in) {
  std::string line;
  int line_no = 0;
  // Skip leading comments and blank lines to reach the header.
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] != '#') break;
  }
  if (line.empty() || in.fail())
    throw InputError("CSV: missing header line");
  std::vector<std::string> head = split_csv_line(line);
  if (head.size() < 2 || head.back() != "f")
    throw InputError("CSV: header must be x1,...,xn,f");
  int n = static_cast<int>(head.size()) - 1;
  for (int i = 0; i < n; ++i)
    if (head[i] != "x" + std::to_string(i + 1))
      throw InputError("CSV: header must be x1,...,xn,f");
  std::vector<Point> pts;
  std::vector<double> vals;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != n + 1)
      throw InputError("CSV: wrong column count on line " +
                       std::to_string(line_no));
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = parse_double(cells[i], line_no);
    pts.push_back(Point(std::move(c)));
    vals.push_back(parse_double(cells[n], line_no));
  }
  if (pts.empty()) throw InputError("CSV: no data rows");
  return SampleCloud(std::move(pts), std::move(vals));
}

SampleCloud SampleCloud::read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  return read_csv(in);
}

void SampleCloud::write_csv(std::ostream& out,
                            const std::vector<std::string>& comment_lines) const {
  for (const std::string& c : comment_lines) out << "# " << c << "\n";
  for (int i = 0; i < dim_; ++i) out << "x" << (i + 1) << ",";
  out << "f\n";
  for (int i = 0; i < size(); ++i) {
    for (int d = 0; d < dim_; ++d) out << fmt17(points_[i][d]) << ",";
    out << fmt17(values_[i]) << "\n";
  }
}

// ---------------------------------------------------------------- Objective

ExtReal Objective::evaluate(const Point& x) const {
  if (x.dim() != dim)
    throw InputError("Objective::evaluate: expected dimension " +
                     std::to_string(dim) + ", got " + std::to_string(x.dim()));
  if (!domain.contains(x)) return ExtReal::inf();
  return fn(x);
}

ExtReal evaluate(const Objective& obj, const Point& x) { return obj.evaluate(x); }

double empirical_lipschitz(const SampleCloud& cloud) {
  if (cloud.size() < 2)
    throw InputError("empirical_lipschitz: need at least two samples");
  double best = 0;
  for (int i = 0; i < cloud.size(); ++i)
    for (int j = i + 1; j < cloud.size(); ++j) {
      double d = cloud.point(i).dist(cloud.point(j));
      if (d < kDuplicateTol) continue;
      best = std::max(best, std::abs(cloud.value(i) - cloud.value(j)) / d);
    }
  return best;
}

SampleCloud sample_grid(const Objective& obj, double mesh) {
  if (!(mesh > 0)) throw InputError("sample_grid: mesh must be positive");
  Box bb = obj.domain.bounding_box();
  int n = obj.dim;
  std::vector<std::vector<double>> axes(n);
  for (int d = 0; d < n; ++d) {
    double lo = bb.lo[d], hi = bb.hi[d];
    long steps = static_cast<long>(std::floor((hi - lo) / mesh + 1e-9));
    for (long i = 0; i <= steps; ++i) {
      double x = lo + static_cast<double>(i) * mesh;
      if (i == steps && std::abs(hi - x) <= 1e-9) x = hi;
      axes[d].push_back(x);
    }
  }
  std::vector<Point> pts;
  std::vector<double> vals;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<double> c(n);
    for (int d = 0; d < n; ++d) c[d] = axes[d][idx[d]];
    Point p(std::move(c));
    ExtReal v = obj.evaluate(p);
    if (v.finite()) {
      pts.push_back(std::move(p));
      vals.push_back(v.value());
    }
    int d = n - 1;
    while (d >= 0 && ++idx[d] == axes[d].size()) idx[d--] = 0;
    if (d < 0) break;
  }
  if (pts.empty())
    throw InputError("sample_grid: no finite samples on the grid");
  return SampleCloud(std::move(pts), std::move(vals));
}

Objective objective_from_cloud(const SampleCloud& cloud) {
  if (cloud.dim() != 1)
    throw InputError(
        "objective_from_cloud: only 1-D clouds have a canonical interpolant");
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < cloud.size(); ++i)
    pts.push_back({cloud.point(i)[0], cloud.value(i)});
  std::sort(pts.begin(), pts.end());
  double k = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double dx = pts[i].first - pts[i - 1].first;
    if (dx > kDuplicateTol)
      k = std::max(k, std::abs(pts[i].second - pts[i - 1].second) / dx);
  }
  Objective obj;
  obj.name = "cloud-interpolant";
  obj.dim = 1;
  obj.domain = Domain::box(Point({pts.front().first}), Point({pts.back().first}));
  obj.lipschitz_k = k;
  obj.fn = [pts](const Point& x) -> ExtReal {
    double t = x[0];
    // exact value at stored samples
    for (const auto& [px, pv] : pts)
      if (std::abs(t - px) <= kDuplicateTol) return ExtReal(pv);
    if (t < pts.front().first || t > pts.back().first) {
      // domain mask admits a tolerance collar; clamp to the nearest end
      return ExtReal(t < pts.front().first ? pts.front().second
                                           : pts.back().second);
    }
    auto it = std::upper_bound(pts.begin(), pts.end(),
                               std::make_pair(t, std::numeric_limits<double>::max()));
    const auto& [x1, f1] = *it;
    const auto& [x0, f0] = *(it - 1);
    double w = (t - x0) / (x1 - x0);
    return ExtReal(f0 + w * (f1 - f0));
  };
  // A piecewise-linear interpolant attains its minimum at a vertex.
  auto lowest = std::min_element(
      pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.second < b.second;
      });
  obj.known_minimizer = Point({lowest->first});
  obj.known_min_value = lowest->second;
  return obj;
}

// ---------------------------------------------------------------- Rng

double Rng::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InputError("Rng::uniform_int: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(eng_() % span);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform01();  // (0, 1]
  double u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

Point Rng::unit_vector(int n) {
  while (true) {
    std::vector<double> c(n);
    for (double& v : c) v = normal();
    Point p(std::move(c));
    if (p.norm() > 1e-12) return p.normalized();
  }
}

Point Rng::point_in_box(const Point& lo, const Point& hi) {
  std::vector<double> c(lo.dim());
  for (int i = 0; i < lo.dim(); ++i) c[i] = uniform(lo[i], hi[i]);
  return Point(std::move(c));
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace dd
