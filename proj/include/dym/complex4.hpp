#pragma once

// Combinatorial geometry of the 4-dimensional cubical complex: cells, their
// double (tilde) copy, permutation and cup signs, the block and glued-sphere
// topologies, integer chains and the boundary operator.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dym {

inline constexpr int kDim = 4;

/// Version of the storage order chart -> k (lexicographic) -> direction set
/// (ascending bitmask). Serialized forms and reports record it.
inline constexpr int kCellOrderingVersion = 1;

enum class Chart : std::uint8_t { V = 0, Vhat = 1 };
enum class Topology : std::uint8_t { Block, Sphere };
/// Which copy of the double complex a cell or form lives on.
enum class Copy : std::uint8_t { Base = 0, Tilde = 1 };

constexpr Chart toggled(Chart c) { return c == Chart::V ? Chart::Vhat : Chart::V; }
constexpr Copy toggled(Copy c) { return c == Copy::Base ? Copy::Tilde : Copy::Base; }

std::string to_string(Topology t);
std::string to_string(Copy c);

/// Subset of the axes {1,2,3,4}; bit (i-1) set iff axis i is a 1-dimensional
/// factor of the cell.
class DirectionSet {
 public:
  constexpr DirectionSet() = default;
  constexpr explicit DirectionSet(std::uint8_t mask) : mask_(mask & 0xF) {}
  constexpr DirectionSet(std::initializer_list<int> axes) {
    for (int a : axes) mask_ |= static_cast<std::uint8_t>(1u << (a - 1));
  }

  static constexpr DirectionSet full() { return DirectionSet(std::uint8_t{0xF}); }

  constexpr std::uint8_t mask() const { return mask_; }
  constexpr bool contains(int axis) const { return (mask_ >> (axis - 1)) & 1u; }
  constexpr int degree() const {
    int n = 0;
    for (int a = 1; a <= kDim; ++a) n += contains(a) ? 1 : 0;
    return n;
  }
  constexpr DirectionSet complement() const { return DirectionSet(static_cast<std::uint8_t>(~mask_ & 0xF)); }
  constexpr DirectionSet with(int axis) const {
    return DirectionSet(static_cast<std::uint8_t>(mask_ | (1u << (axis - 1))));
  }
  constexpr DirectionSet without(int axis) const {
    return DirectionSet(static_cast<std::uint8_t>(mask_ & ~(1u << (axis - 1))));
  }
  /// Number of members strictly smaller than axis.
  constexpr int count_below(int axis) const {
    int n = 0;
    for (int a = 1; a < axis; ++a) n += contains(a) ? 1 : 0;
    return n;
  }
  constexpr bool disjoint(DirectionSet o) const { return (mask_ & o.mask_) == 0; }

  constexpr auto operator<=>(const DirectionSet&) const = default;

 private:
  std::uint8_t mask_ = 0;
};

std::string to_string(DirectionSet p);

/// All direction sets of the given degree in ascending bitmask order.
const std::vector<DirectionSet>& direction_sets(int degree);
/// Position of p within direction_sets(p.degree()).
int direction_rank(DirectionSet p);
/// Binomial(4, degree): the number of components per site of a degree-p form.
int components_per_site(int degree);

using MultiIndex = std::array<int, kDim>;

/// tau_i (direction +1) or sigma_i (direction -1) along axis i in {1..4}.
MultiIndex shift(MultiIndex k, int axis, int direction = +1);
/// tau_P: one step forward along every axis of p (e.g. tau_12 for p = {1,2}).
MultiIndex shift(MultiIndex k, DirectionSet p);

class OutOfDomain : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class Domain {
 public:
  Domain(std::array<int, kDim> sizes, Topology topology);

  const std::array<int, kDim>& sizes() const { return sizes_; }
  int size(int axis) const { return sizes_[axis - 1]; }
  Topology topology() const { return topology_; }
  bool is_sphere() const { return topology_ == Topology::Sphere; }
  int chart_count() const { return is_sphere() ? 2 : 1; }

  /// Lowest and highest stored index along an axis (halo included on Block).
  int stored_lo() const { return is_sphere() ? 1 : 0; }
  int stored_hi(int axis) const { return is_sphere() ? size(axis) : size(axis) + 1; }
  int stored_extent(int axis) const { return stored_hi(axis) - stored_lo() + 1; }
  /// Number of stored (chart, k) sites.
  std::size_t stored_site_count() const;
  /// Linear position of a stored (chart, k) in normative order.
  std::size_t site_index(Chart chart, const MultiIndex& k) const;

  bool operator==(const Domain&) const = default;

 private:
  std::array<int, kDim> sizes_;
  Topology topology_;
};

struct Address {
  Chart chart = Chart::V;
  MultiIndex k{};

  auto operator<=>(const Address&) const = default;
};

/// Maps an address onto stored data. Sphere: an axis at 0 or N_i+1 crosses
/// into the other chart (at N_i or 1); crossings on several axes compose by
/// toggling the chart once per axis. Block: identity on the halo range.
std::optional<Address> try_resolve(const Domain& d, const Address& a);
Address resolve_address(const Domain& d, const Address& a);

/// Every stored site in normative order (Block halo included).
std::vector<Address> stored_sites(const Domain& d);
/// Sites with 1 <= k_i <= N_i on every chart: the domain V (and V-hat).
std::vector<Address> interior_sites(const Domain& d);
/// True when k is interior and k_i + depth <= stored_hi(i) for every axis, i.e.
/// a forward stencil of the given depth stays in stored data. Always true on
/// the sphere for interior k.
bool stencil_safe(const Domain& d, const MultiIndex& k, int depth);

/// Sign of the permutation (P ascending, complement ascending) of (1,2,3,4).
int perm_sign(DirectionSet p);
/// (-1)^m with m = #{(i, j) : i in P, j in Q, j < i}. Requires P, Q disjoint.
int cup_sign(DirectionSet p, DirectionSet q);

struct Cell {
  Chart chart = Chart::V;
  MultiIndex k{};
  DirectionSet dirs;
  Copy copy = Copy::Base;

  int degree() const { return dirs.degree(); }
  auto operator<=>(const Cell&) const = default;
};

std::string to_string(const Cell& c);

/// Chain-level star: *s_k^(P) = perm_sign(P) s~_k^(P^c), landing on the other
/// copy. The same rule is used from the tilde copy back to the base copy.
std::pair<int, Cell> star_cell(const Cell& c);

/// Sparse integer combination of cells. Zero coefficients are never stored.
class Chain {
 public:
  using Terms = std::map<Cell, long>;

  Chain() = default;
  explicit Chain(const Cell& c, long coeff = 1) { add(c, coeff); }

  void add(const Cell& c, long coeff);
  void add(const Chain& other, long factor = 1);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  long coefficient(const Cell& c) const;

  bool operator==(const Chain&) const = default;

 private:
  Terms terms_;
};

/// Boundary of a single resolved cell; every output cell is address-resolved.
/// Throws OutOfDomain on Block when a face leaves the halo.
Chain boundary_cell(const Domain& d, const Cell& c);
Chain boundary(const Domain& d, const Chain& c);

/// One term s_k^(P) (x) *s_k^(P) of V_p.
struct VpEntry {
  Cell cell;
  Cell dual;
  int sign;
};

/// V_p over all interior sites (both charts on the sphere). `copy` selects the
/// copy of the left factor; the right factor lives on the other copy.
std::vector<VpEntry> build_Vp(const Domain& d, int p, Copy copy = Copy::Base);

}  // namespace dym
