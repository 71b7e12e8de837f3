#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ringnet/multi_index.hpp"
#include "ringnet/rational.hpp"

namespace ringnet {

/// Irrational scale factors attached to circle lengths. Values of distinct
/// tags are pairwise irrational multiples of each other, so the rationality
/// of a length ratio is decided exactly by comparing tags.
enum class LengthTag { One, Sqrt2, Golden };

double tag_value(LengthTag tag);
std::string tag_name(LengthTag tag);
std::optional<LengthTag> tag_from_name(const std::string& name);

/// Circle length: exact rational part times a tagged irrational unit.
struct Length {
  Rational rational;
  LengthTag tag = LengthTag::One;

  Length() = default;
  Length(Rational r, LengthTag t) : rational(r), tag(t) {}
  Length(std::int64_t num, std::int64_t den, LengthTag t) : rational(num, den), tag(t) {}

  double value() const { return rational.value() * tag_value(tag); }

  /// Exact ratio a/b when it is rational (same tags), nothing otherwise.
  static std::optional<Rational> ratio(const Length& a, const Length& b) {
    if (a.tag != b.tag) return std::nullopt;
    return Rational::ratio(a.rational, b.rational);
  }
};

/// Star of circles joined at one point. Circles 1..n_d carry a damping
/// interval [a_i, b_i]; the remaining circles use the a_i = b_i = L_i
/// convention so their damping indicator vanishes.
struct Network {
  int n = 0;
  int n_d = 0;
  std::vector<Length> lengths;
  std::vector<std::pair<double, double>> damping;  // one [a_i, b_i] per circle
  Eigen::MatrixXd m;                               // transmission matrix, n x n

  double length(int i) const { return lengths[static_cast<std::size_t>(i)].value(); }
  double l_min() const;
  double l_max() const;

  /// Convenience builder that fills in the undamped convention for i >= n_d.
  static Network make(std::vector<Length> lengths, std::vector<std::pair<double, double>> damped,
                      Eigen::MatrixXd m);
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_network(const Network& net);

/// max over columns j of sum_i |m_ij|.
double l1_norm(const Eigen::MatrixXd& m);

struct RationalAlternative {
  int i = 0;
  int j = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  bool satisfied = false;
};

struct HypothesisReport {
  double l1_norm = 0.0;
  bool mixing_ok = false;
  std::optional<std::pair<int, int>> irrational_pair;
  std::optional<RationalAlternative> rational_alternative;

  bool stability_hypotheses_ok() const {
    return l1_norm <= 1.0 && mixing_ok &&
           (irrational_pair.has_value() ||
            (rational_alternative && rational_alternative->satisfied));
  }
};

/// Checks the transmission-norm, mixing and length-ratio hypotheses of the
/// stability result; when every ratio is rational, evaluates the denominator
/// threshold q >= 3 L_j (max{2T/(mu (b_j - a_j)), 1/T} + 1/T) over all
/// candidate pairs (i, j) with j damped.
HypothesisReport check_hypotheses(const Network& net, double T, double mu);

/// L(n) = sum_i n_i L_i.
double lattice_value(const MultiIndex& n, const Network& net);

/// Comparison tolerance for L(n) <= t tests (symmetric, boundary included).
inline double lattice_tolerance(double t) { return 1e-12 * std::max(1.0, t); }

/// Streams lattice points n with L(n) <= t in nondecreasing L(n) order
/// (lexicographic tie-break), each exactly once. With fixed_zero = j >= 0
/// only points with n_j = 0 are produced.
class LatticeStream {
 public:
  LatticeStream(const Network& net, double t, int fixed_zero = -1,
                std::size_t budget = kDefaultBudget);

  std::optional<MultiIndex> next();

  static constexpr std::size_t kDefaultBudget = 2'000'000;

 private:
  struct Item {
    double l;
    MultiIndex n;
    bool operator>(const Item& o) const {
      if (l != o.l) return l > o.l;
      return o.n < n;
    }
  };

  const Network* net_;
  double t_;
  double tol_;
  int fixed_zero_;
  std::size_t budget_;
  std::size_t emitted_ = 0;
  std::vector<Item> heap_;  // min-heap via std::greater

  void push(MultiIndex n);
};

/// All lattice points with L(n) <= t, in stream order.
std::vector<MultiIndex> enumerate_lattice_all(const Network& net, double t,
                                              std::size_t budget = LatticeStream::kDefaultBudget);

/// Lattice points with n_j = 0 and L(n) <= t, in stream order.
std::vector<MultiIndex> enumerate_lattice(int j, double t, const Network& net,
                                          std::size_t budget = LatticeStream::kDefaultBudget);

}  // namespace ringnet
