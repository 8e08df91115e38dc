#pragma once

// Copula representations.
//
// A Copula is an immutable, cheaply copyable handle to one of three kinds of
// representation:
//   - CheckerboardCopula: a mass tensor on an arbitrary rectilinear grid,
//     uniform inside every cell;
//   - SegmentCopula: finitely many line segments carrying uniform mass;
//   - analytic nodes: closed forms (M, W, Pi, extreme Clayton) and expression
//     trees built from reflections, permutations, glue products, mixtures and
//     the corner-pair surgery.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mincop {

using Point = std::vector<double>;
using PointView = std::span<const double>;
using Axes = std::vector<std::vector<double>>;

/// Largest dimension accepted by any constructor. Reflection and survival
/// evaluation costs O(2^d) per point.
int dimension_cap();
void set_dimension_cap(int cap);

/// Throws InputError unless `u` has `dim` coordinates, each in [0,1].
void check_unit_point(PointView u, int dim, const char* what = "point");

/// Subset K of {0,...,d-1}; one-based in every external format.
class ReflectionSet {
 public:
  ReflectionSet() = default;
  explicit ReflectionSet(int dim);
  static ReflectionSet from_zero_based(int dim, std::span<const int> axes);
  static ReflectionSet from_one_based(int dim, std::span<const int> axes);
  static ReflectionSet all(int dim);

  int dim() const { return static_cast<int>(mask_.size()); }
  bool contains(int axis) const { return mask_[static_cast<std::size_t>(axis)]; }
  int size() const;
  bool empty() const { return size() == 0; }
  std::vector<int> zero_based() const;
  std::vector<int> one_based() const;
  ReflectionSet symmetric_difference(const ReflectionSet& other) const;

  friend bool operator==(const ReflectionSet&, const ReflectionSet&) = default;

 private:
  std::vector<bool> mask_;
};

/// Coordinate permutation: the result's axis i is the input's axis image(i).
class Permutation {
 public:
  Permutation() = default;
  static Permutation from_zero_based(std::vector<int> image);
  static Permutation from_one_based(std::span<const int> image);
  static Permutation identity(int dim);
  static Permutation swap(int dim, int i, int j);

  int dim() const { return static_cast<int>(image_.size()); }
  int operator[](int i) const { return image_[static_cast<std::size_t>(i)]; }
  bool is_identity() const;
  /// (this o inner): applying `inner` first, then this.
  Permutation after(const Permutation& inner) const;
  std::vector<int> one_based() const;
  const std::vector<int>& zero_based() const { return image_; }

 private:
  std::vector<int> image_;
};

/// Checkerboard copula: mass tensor on a rectilinear grid.
///
/// Masses are stored row-major (last axis fastest). The distribution function
/// is the multilinear interpolation of cumulative vertex sums, which are
/// tabulated at construction together with the upper-orthant (survival) sums.
class CheckerboardCopula {
 public:
  /// Enforces nonnegative masses, total mass one and uniform margins to 1e-12.
  static CheckerboardCopula make(Axes cuts, std::vector<double> masses);
  /// Same storage without the copula checks; for validating raw tensors.
  static CheckerboardCopula make_unchecked(Axes cuts, std::vector<double> masses);
  /// Equally spaced cut points 0, 1/n, ..., 1 on every axis.
  static Axes uniform_cuts(int dim, int n);

  int dim() const { return static_cast<int>(cuts_.size()); }
  const Axes& cuts() const { return cuts_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<double>& masses() const { return masses_; }
  std::size_t cell_count() const { return masses_.size(); }

  std::size_t cell_index(std::span<const std::size_t> cell) const;
  std::size_t vertex_index(std::span<const std::size_t> vertex) const;
  /// Q[[0, v]] at a grid vertex.
  double vertex_cdf(std::size_t flat_vertex) const { return lower_[flat_vertex]; }
  /// Q[[v, 1]] at a grid vertex.
  double vertex_survival(std::size_t flat_vertex) const { return upper_[flat_vertex]; }
  const std::vector<std::size_t>& vertex_strides() const { return vstrides_; }
  const std::vector<std::size_t>& cell_strides() const { return cstrides_; }
  std::size_t vertex_count() const { return lower_.size(); }

  double cdf(PointView u) const;
  double box_mass(PointView lo, PointView hi) const;
  /// Running sum of masses in storage order, for inverse-CDF cell draws.
  const std::vector<double>& cumulative_masses() const { return running_; }

 private:
  CheckerboardCopula() = default;
  void tabulate();

  Axes cuts_;
  std::vector<std::size_t> shape_;
  std::vector<double> masses_;
  std::vector<std::size_t> cstrides_;
  std::vector<std::size_t> vstrides_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> running_;
};

struct Segment {
  Point start;
  Point end;
  double mass = 0.0;

  Point at(double t) const;
};

/// Finitely many segments with uniform mass along each.
class SegmentCopula {
 public:
  /// Rejects zero-length segments and segments with a constant coordinate,
  /// and enforces total mass one and uniform margins (1e-12).
  static SegmentCopula make(int dim, std::vector<Segment> segments);

  int dim() const { return dim_; }
  const std::vector<Segment>& segments() const { return segments_; }

  double cdf(PointView u) const;
  double box_mass(PointView lo, PointView hi) const;
  /// Parameter interval {t in [0,1] : lo <= gamma(t) <= hi}; empty when t0 > t1.
  static std::pair<double, double> parameter_window(const Segment& s, PointView lo,
                                                    PointView hi);

 private:
  SegmentCopula() = default;
  int dim_ = 0;
  std::vector<Segment> segments_;
};

struct Node;

class Copula {
 public:
  enum class Kind {
    checkerboard,
    segments,
    upper_frechet,
    lower_frechet,
    product,
    clayton_extreme,
    reflected,
    permuted,
    glue_product,
    mixture,
    refuted,
  };
  enum class Representation { checkerboard, segments, analytic };

  Copula(CheckerboardCopula cb);  // NOLINT(google-explicit-constructor)
  Copula(SegmentCopula seg);      // NOLINT(google-explicit-constructor)

  static Copula upper_frechet(int dim);
  /// W; a copula only in dimension two.
  static Copula lower_frechet();
  static Copula product(int dim);
  static Copula clayton_extreme(int dim);
  /// Raw reflection node; transforms::reflect() is the smart entry point.
  static Copula reflected(Copula inner, ReflectionSet k);
  static Copula permuted(Copula inner, Permutation sigma);
  static Copula glue_product(Copula left, Copula right);
  static Copula mixture(std::vector<std::pair<Copula, double>> parts);
  /// C - 2p C_(1,a,b) + 2p C_(2,a,b); requires a <= b inside the open cube.
  static Copula refuted(Copula inner, Point a, Point b, double p);

  int dim() const;
  Kind kind() const;
  Representation representation() const;
  std::string kind_name() const;
  const Node& node() const { return *node_; }

  const CheckerboardCopula* as_checkerboard_ptr() const;
  const SegmentCopula* as_segments_ptr() const;

 private:
  explicit Copula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

namespace node {

struct UpperFrechet {
  int dim;
};
struct LowerFrechet {};
struct Product {
  int dim;
};
struct ClaytonExtreme {
  int dim;
};
struct Reflected {
  Copula inner;
  ReflectionSet k;
};
struct Permuted {
  Copula inner;
  Permutation sigma;
};
struct GlueProduct {
  Copula left;
  Copula right;
};
struct Mixture {
  std::vector<std::pair<Copula, double>> parts;
};
struct Refuted {
  Copula inner;
  Point a;
  Point b;
  double p;
};

}  // namespace node

struct Node {
  using Payload =
      std::variant<std::shared_ptr<const CheckerboardCopula>, std::shared_ptr<const SegmentCopula>,
                   node::UpperFrechet, node::LowerFrechet, node::Product, node::ClaytonExtreme,
                   node::Reflected, node::Permuted, node::GlueProduct, node::Mixture,
                   node::Refuted>;
  int dim;
  Payload payload;
};

}  // namespace mincop
