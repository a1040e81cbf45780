#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Bad caller input: dimension mismatch, unknown id, malformed file, invalid start.
struct InputError : Error {
  using Error::Error;
};
/// The numerics gave up (solver stall, impossible state). Never a silent wrong answer.
struct NumericalError : Error {
  using Error::Error;
};

/// Default tolerance for domain membership tests.
inline constexpr double kMembershipTol = 1e-9;
/// Two sample points closer than this are considered the same point.
inline constexpr double kDuplicateTol = 1e-12;

/// Extended real: a finite double or +infinity. NaN is rejected at construction,
/// -infinity never occurs. +infinity encodes "outside the effective domain".
class ExtReal {
 public:
  ExtReal() : v_(0.0) {}
  ExtReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (std::isnan(v)) throw NumericalError("ExtReal: NaN is not a value");
    if (v == -std::numeric_limits<double>::infinity())
      throw NumericalError("ExtReal: -infinity is not a value");
  }
  static ExtReal inf() {
    ExtReal r;
    r.v_ = std::numeric_limits<double>::infinity();
    return r;
  }

  bool finite() const { return std::isfinite(v_); }
  bool is_inf() const { return !finite(); }
  /// Finite value; throws on +infinity.
  double value() const {
    if (!finite()) throw NumericalError("ExtReal: value() on +infinity");
    return v_;
  }
  /// Raw double, +inf allowed. For serialization and comparisons.
  double raw() const { return v_; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

  /// inf-absorbing addition.
  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if (a.is_inf() || b.is_inf()) return inf();
    return ExtReal(a.v_ + b.v_);
  }
  /// lambda * value with the convex-combination convention 0 * inf = 0.
  ExtReal scaled(double lambda) const {
    if (lambda < 0) throw InputError("ExtReal::scaled: negative weight");
    if (lambda == 0.0) return ExtReal(0.0);
    if (is_inf()) return inf();
    return ExtReal(lambda * v_);
  }

 private:
  double v_;
};

/// Point in R^n. Coordinates are always finite.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  static Point zeros(int n) { return Point(std::vector<double>(n, 0.0)); }

  int dim() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  const std::vector<double>& coords() const { return c_; }

  double norm() const;
  double dot(const Point& o) const;
  double dist(const Point& o) const { return (*this - o).norm(); }
  /// Unit vector in the same direction; throws on (near-)zero input.
  Point normalized() const;

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(double s, const Point& p);
  friend bool operator==(const Point& a, const Point& b) { return a.c_ == b.c_; }

 private:
  std::vector<double> c_;
};

/// Strict lexicographic order on coordinates; used for canonical tie-breaks.
bool lex_less(const Point& a, const Point& b);
std::string to_string(const Point& p);

struct Box {
  Point lo, hi;
};
struct Ball {
  Point center;
  double radius = 0;
};
struct HullOfPoints {
  std::vector<Point> points;
};

/// Bounded closed region used as an objective's effective domain.
/// Shapes: axis box, closed ball, or the convex hull of a finite point set.
class Domain {
 public:
  static Domain box(Point lo, Point hi);
  static Domain ball(Point center, double radius);
  static Domain hull_of(std::vector<Point> points);

  int dim() const;
  double tolerance() const { return tol_; }
  void set_tolerance(double tol);

  bool contains(const Point& x) const;
  /// True when the closed ball B(center, r) stays inside the domain.
  bool contains_ball(const Point& center, double r) const;
  /// Smallest axis box enclosing the domain.
  Box bounding_box() const;
  /// Finite radius of a ball around the box center that encloses the domain.
  double enclosing_radius() const;
  double diameter() const { return 2.0 * enclosing_radius(); }

  const std::variant<Box, Ball, HullOfPoints>& shape() const { return shape_; }

 private:
  Domain() = default;
  std::variant<Box, Ball, HullOfPoints> shape_;
  double tol_ = kMembershipTol;
};

/// Finite set of (point, value) samples with distinct points and finite values.
/// Construction merges points closer than kDuplicateTol, keeping the lower value.
class SampleCloud {
 public:
  SampleCloud(std::vector<Point> points, std::vector<double> values);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(points_.size()); }
  const Point& point(int i) const { return points_[i]; }
  double value(int i) const { return values_[i]; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& values() const { return values_; }
  double min_value() const;
  double value_range() const;

  /// CSV with header "x1,...,xn,f"; leading '#' lines are skipped on read.
  static SampleCloud read_csv(std::istream& in);
  static SampleCloud read_csv_file(const std::string& path);
  void write_csv(std::ostream& out,
                 const std::vector<std::string>& comment_lines = {}) const;

 private:
  std::vector<Point> points_;
  std::vector<double> values_;
  int dim_ = 0;
};

/// Objective function contract consumed by every other module.
/// `fn` is the bare formula; evaluate() masks it with the domain so callers
/// always see +infinity outside. Counterexample entries may also return
/// +infinity at interior holes of their effective domain.
struct Objective {
  std::string name = "objective";
  int dim = 1;
  std::function<ExtReal(const Point&)> fn;
  Domain domain = Domain::box(Point::zeros(1), Point::zeros(1));
  double lipschitz_k = 1.0;
  std::optional<Point> known_minimizer;
  std::optional<double> known_min_value;
  std::optional<std::function<Point(const Point&)>> subgradient_hint;

  ExtReal evaluate(const Point& x) const;
};

ExtReal evaluate(const Objective& obj, const Point& x);

/// Max pairwise |f_i - f_j| / dist(x_i, x_j) over the cloud; needs >= 2 points.
double empirical_lipschitz(const SampleCloud& cloud);

/// Grid-sample an objective over its domain's bounding box, keeping finite
/// samples only. Axis points are lo + i*mesh with the final point snapped to
/// hi when it lands within 1e-9; iteration is row-major (last axis fastest).
SampleCloud sample_grid(const Objective& obj, double mesh);

/// Exact piecewise-linear interpolant of a 1-D cloud on [min x, max x].
/// Stored values are returned exactly at sample points.
Objective objective_from_cloud(const SampleCloud& cloud);

/// Deterministic RNG: identical streams on every platform (mt19937_64 plus
/// hand-rolled distributions; std:: distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [0, 1).
  double uniform01();
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller.
  double normal();
  Point unit_vector(int n);
  Point point_in_box(const Point& lo, const Point& hi);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0;
};

/// Shortest fixed formatting that round-trips doubles: %.17g.
std::string fmt17(double v);

}  // namespace dd
