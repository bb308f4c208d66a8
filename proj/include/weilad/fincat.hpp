#pragma once

// Finite model of the functor category: set-valued functors on a small
// finite index category, their exponentials (plain and sliced), and the
// Weil-functor stand-ins given by precomposition with an endofunctor.

#include "weilad/error.hpp"
#include "weilad/report.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace weilad::fincat {

/// A function between finite sets {0..n-1} -> {0..m-1}, as its image list.
using Table = std::vector<std::size_t>;

/// Components of a natural transformation, one table per object.
using Components = std::vector<Table>;

struct Arrow {
  std::string id;
  std::size_t dom = 0;
  std::size_t cod = 0;
};

/// Finite category. Construction does not validate; see validate_category.
class FinCat {
 public:
  using CompTable = std::vector<std::vector<std::optional<std::size_t>>>;

  FinCat(std::string name, std::vector<std::string> objects, std::vector<Arrow> arrows,
         std::vector<std::size_t> identities, CompTable comp);

  const std::string& name() const { return name_; }
  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
  std::size_t identity(std::size_t object) const { return identities_.at(object); }
  const std::vector<std::size_t>& identities() const { return identities_; }
  const CompTable& comp_table() const { return comp_; }

  /// g∘f; throws BadParameter when cod f != dom g or the table has no entry.
  std::size_t compose(std::size_t g, std::size_t f) const;
  std::optional<std::size_t> composite(std::size_t g, std::size_t f) const { return comp_.at(g).at(f); }

  /// Arrows with the given domain, ascending by index.
  const std::vector<std::size_t>& out(std::size_t object) const { return out_.at(object); }
  std::size_t object_index(const std::string& label) const;
  std::size_t arrow_index(const std::string& label) const;

 private:
  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> identities_;
  CompTable comp_;
  std::vector<std::vector<std::size_t>> out_;
};

using CatPtr = std::shared_ptr<const FinCat>;

/// Set-valued functor. Elements of F(c) are 0..sizes[c]-1; labels are only
/// used for display and may be empty.
struct FinFunctor {
  CatPtr cat;
  std::vector<std::size_t> sizes;
  std::vector<Table> maps;
  std::vector<std::vector<std::string>> labels;

  std::size_t size(std::size_t object) const { return sizes.at(object); }
  std::size_t apply(std::size_t arrow, std::size_t x) const { return maps.at(arrow).at(x); }
  std::string label(std::size_t object, std::size_t x) const;
  std::size_t total_size() const;
  bool operator==(const FinFunctor& other) const { return sizes == other.sizes && maps == other.maps; }
};

struct FinNatTrans {
  FinFunctor source;
  FinFunctor target;
  Components components;

  std::size_t at(std::size_t object, std::size_t x) const { return components.at(object).at(x); }
};

/// An object pi: total -> L of the slice over L (L = structure.target).
struct SlicedObject {
  FinFunctor total;
  FinNatTrans structure;

  const FinFunctor& base() const { return structure.target; }
};

/// Stand-in for _⊗W: an endofunctor G with optional families p: G => Id
/// (models W -> k) and i: Id => G (models k -> W). p[V] is an arrow
/// G(V) -> V and i[V] an arrow V -> G(V).
struct EndofunctorData {
  std::string name;
  CatPtr cat;
  std::vector<std::size_t> on_objects;
  std::vector<std::size_t> on_arrows;
  std::optional<std::vector<std::size_t>> p;
  std::optional<std::vector<std::size_t>> i;
};

/// A family eta_V: G1(V) -> G2(V) of arrows (models alpha_phi for phi: W1 -> W2).
struct EndoTransformation {
  std::string name;
  EndofunctorData from;
  EndofunctorData to;
  std::vector<std::size_t> components;
};

/// Enumeration limits and mutation hooks.
struct ModelConfig {
  /// Raw candidate families per object for exponentials, and maximum number
  /// of enumerated natural transformations per hom-set.
  std::uint64_t max_enum = default_max_enum();
  /// Mutation hook: the exponential's action along non-identity arrows
  /// sends each family to the next one (wrong reindexing).
  bool defect_exp_reindex = false;

  /// 10^7, or WEILAD_MAX_ENUM when set to a positive integer.
  static std::uint64_t default_max_enum();
};

// ---- validation ---------------------------------------------------------

ValidationReport validate_category(const FinCat& c);
ValidationReport validate_functor(const FinFunctor& f);
ValidationReport validate_nat(const FinNatTrans& eta);
ValidationReport validate_sliced(const SlicedObject& a);
ValidationReport validate_endofunctor(const EndofunctorData& g);

/// Throws InvalidInstance with the first failing check when `report` fails.
void require(const ValidationReport& report, const std::string& what);

// ---- basic constructions ------------------------------------------------

FinFunctor constant_functor(const CatPtr& c, std::size_t size);
inline FinFunctor terminal_functor(const CatPtr& c) { return constant_functor(c, 1); }
inline FinFunctor empty_functor(const CatPtr& c) { return constant_functor(c, 0); }
FinNatTrans identity_nat(const FinFunctor& f);
/// g∘f for f: A => B, g: B => C.
FinNatTrans compose_nat(const FinNatTrans& g, const FinNatTrans& f);
/// The unique transformation into the terminal functor.
FinNatTrans to_terminal(const FinFunctor& f);

struct Product {
  FinFunctor functor;
  FinNatTrans proj1;
  FinNatTrans proj2;
};

/// Objectwise cartesian product; the pair (x, y) has index x * |N(c)| + y.
Product product(const FinFunctor& m, const FinFunctor& n);
/// The pairing <f, g>: P => M x N.
FinNatTrans pair(const Product& prod, const FinNatTrans& f, const FinNatTrans& g);

struct Equalizer {
  FinFunctor functor;
  FinNatTrans inclusion;
};

/// Objectwise subset where f and g agree, in ascending element order.
Equalizer equalizer(const FinNatTrans& f, const FinNatTrans& g);

// ---- natural transformation enumeration ----------------------------------

/// candidates[c][x]: allowed images of element x of S(c). Empty outer vector
/// means everything is allowed.
using Candidates = std::vector<std::vector<std::vector<std::size_t>>>;

/// All natural transformations S => T (restricted to `candidates`), in
/// lexicographic order of their flattened components. Throws SizeLimit when
/// more than config.max_enum are found.
std::vector<Components> enumerate_nat(const FinFunctor& s, const FinFunctor& t, const ModelConfig& config,
                                      const Candidates& candidates = {});

/// Flattened components in object order; used as a sort/compare key.
Table flatten(const Components& c);

/// Same enumeration as enumerate_nat, stored as contiguous flattened rows.
struct NatRows {
  std::size_t stride = 0;
  std::size_t count = 0;
  std::vector<std::uint32_t> data;
  const std::uint32_t* row(std::size_t k) const { return data.data() + k * stride; }
  /// Index of `r` (stride entries) or nullopt; rows are sorted.
  std::optional<std::size_t> find(const std::uint32_t* r) const;
};
NatRows enumerate_nat_rows(const FinFunctor& s, const FinFunctor& t, const ModelConfig& config,
                           const Candidates& candidates = {});

// ---- exponentials ---------------------------------------------------------

/// Elements of M^N(W) (or of the sliced exponential): a family assigning to
/// every arrow phi out of W (in FinCat::out order) a function given on a
/// fixed list of N(cod phi) elements. `base` is the L-point for sliced
/// exponentials and 0 otherwise.
struct Family {
  std::size_t base = 0;
  std::vector<Table> maps;

  bool operator==(const Family&) const = default;
  auto operator<=>(const Family&) const = default;
};

struct Exponential {
  FinFunctor functor;
  /// families[W][e] is element e of M^N(W).
  std::vector<std::vector<Family>> families;
  /// domains[W][k]: the N-elements on which the k-th arrow's map is defined
  /// (all of N(cod) for plain exponentials; a fiber for sliced ones).
  /// Indexed by (W, base, k) flattened as domains[W][base][k].
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> domains;

  /// Reverse lookup of families[W].
  std::vector<std::map<Family, std::size_t>> index;

  /// Element index of `f` in M^N(W), or nullopt when f is not compatible.
  std::optional<std::size_t> index_of(std::size_t object, const Family& f) const;
};

/// The intersection-of-equalizers exponential M^N: families s over arrows
/// phi: W -> V with s_phi: N(V) -> M(V) and M(phi2)∘s_phi1 = s_(phi2∘phi1)∘N(phi2).
/// Throws SizeLimit when a raw candidate count exceeds config.max_enum.
Exponential exponential(const FinFunctor& m, const FinFunctor& n, const ModelConfig& config = {});

/// Brute-force oracle: filters the full product of function tables by the
/// compatibility equations. Returns families at `object` in sorted order.
std::vector<Family> exponential_oracle(const FinFunctor& m, const FinFunctor& n, std::size_t object);

/// Evaluation transformation M^N x N => M (s, y) |-> s_id(y).
FinNatTrans evaluation(const Exponential& e, const FinFunctor& m, const FinFunctor& n);

/// Exhaustive currying check: for every probe P, Hom(P x N, M) and
/// Hom(P, M^N) are enumerated, currying is shown to be a bijection with
/// inverse uncurrying, and naturality in P is checked along every
/// transformation between probes.
ValidationReport verify_ccc(const FinFunctor& m, const FinFunctor& n, const std::vector<FinFunctor>& probes,
                            const ModelConfig& config = {});

// ---- slices -----------------------------------------------------------------

/// A x_L B with its structure map and projections.
struct FiberedProduct {
  SlicedObject object;
  FinNatTrans proj1;
  FinNatTrans proj2;
  /// pairs[c][k] = (a, b) for element k of the product at c.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs;
};

FiberedProduct fibered_product(const SlicedObject& a, const SlicedObject& b);

struct SliceExponential {
  SlicedObject object;
  Exponential exp;
};

/// Fiberwise exponential (A^B)_L: pairs (l in L(W), family of fiber maps
/// B(V)_{L(phi)l} -> A(V)_{L(phi)l}) with the same compatibility equations.
SliceExponential slice_exponential(const SlicedObject& a, const SlicedObject& b, const ModelConfig& config = {});

/// Slice morphisms S -> T over the common base, enumerated.
std::vector<Components> enumerate_slice_homs(const SlicedObject& s, const SlicedObject& t, const ModelConfig& config);

/// verify_ccc inside the slice over L: fibered products, slice homs.
ValidationReport verify_slice_ccc(const SlicedObject& a, const SlicedObject& b, const std::vector<SlicedObject>& probes,
                                  const ModelConfig& config = {});

/// The object id: L -> L of the slice, and the sliced object pi: M x L -> L
/// (used for L-terminal degenerations and tests).
SlicedObject over_terminal(const FinFunctor& m);
SlicedObject identity_sliced(const FinFunctor& l);

// ---- Weil-functor stand-ins --------------------------------------------------

EndofunctorData identity_endofunctor(const CatPtr& c);
/// G1∘G2 (apply G2 first); p and i compose when both sides carry them.
EndofunctorData compose_endofunctors(const EndofunctorData& g1, const EndofunctorData& g2);

/// M∘G.
FinFunctor precompose(const EndofunctorData& g, const FinFunctor& m);
/// f∘G: M∘G => N∘G for f: M => N.
FinNatTrans precompose(const EndofunctorData& g, const FinNatTrans& f);

/// Arrow family G1 => G2 with naturality check; throws NonNatural.
void require_natural(const EndoTransformation& eta);
EndoTransformation identity_transformation(const EndofunctorData& g);
/// eta2∘eta1.
EndoTransformation compose_transformations(const EndoTransformation& eta2, const EndoTransformation& eta1);
/// i: Id => G and p: G => Id when present.
std::optional<EndoTransformation> unit_transformation(const EndofunctorData& g);
std::optional<EndoTransformation> counit_transformation(const EndofunctorData& g);

/// alpha_eta(M): M∘G1 => M∘G2 with components M(eta_V). Throws NonNatural
/// when eta is not natural.
FinNatTrans alpha_of(const EndoTransformation& eta, const FinFunctor& m);

/// T_L(A) for G with p and i: {x in A(GV) | tau(x) = L(i_V) L(p_V) tau(x)}
/// with structure map x |-> L(p_V) tau(x). `injection` is the canonical
/// inclusion T_L(A) => A∘G.
struct SlicedT {
  SlicedObject object;
  FinNatTrans injection;
  /// elements[V][k]: the element of A(G V) that is element k of T_L(A)(V).
  std::vector<Table> elements;
};

SlicedT sliced_T(const EndofunctorData& g, const SlicedObject& a);
/// Unique restriction of f∘G making the injection square commute.
FinNatTrans sliced_T(const EndofunctorData& g, const SlicedT& source, const SlicedT& target, const FinNatTrans& f);
/// Sliced alpha^L_eta(A): T_L^{G1}(A) => T_L^{G2}(A) induced by alpha_eta(A).
/// Throws NonNatural when alpha does not restrict.
FinNatTrans sliced_alpha(const EndoTransformation& eta, const SlicedT& t1, const SlicedT& t2, const FinFunctor& a);

/// Comparison morphism precompose(G, M^N) -> (M∘G)^(N∘G), families
/// reindexed along G; reports naturality and bijectivity, then checks the
/// two composites of the alpha-compatibility statement for every family in
/// `etas` (defaults: identity, i and p when present).
ValidationReport exp_compat_check(const EndofunctorData& g, const FinFunctor& m, const FinFunctor& n,
                                  const ModelConfig& config = {});
ValidationReport composite_check(const EndoTransformation& eta, const FinFunctor& m, const FinFunctor& n,
                                 const ModelConfig& config = {});
ValidationReport exp_compat_check_slice(const EndofunctorData& g, const SlicedObject& a, const SlicedObject& b,
                                        const ModelConfig& config = {});
ValidationReport composite_check_slice(const EndoTransformation& eta, const SlicedObject& a, const SlicedObject& b,
                                       const ModelConfig& config = {});

// ---- iterated slices and localization ----------------------------------------

/// An object of (K/L)/(A -> L): X with sigma: X => L and f: X => A over L.
struct IteratedObject {
  FinFunctor x;
  Components sigma;
  Components f;
};

/// An object of K/total(A): X with f: X => A.
struct FlatObject {
  FinFunctor x;
  Components f;
};

/// Identification (K/L)/(A -> L) ~ K/total(A).
struct FlattenSlice {
  SlicedObject a;

  bool is_object(const IteratedObject& o) const;
  FlatObject flatten(const IteratedObject& o) const;
  IteratedObject unflatten(const FlatObject& o) const;
  /// Morphisms g: X => X' in either category (same underlying data).
  bool is_iterated_morphism(const IteratedObject& s, const IteratedObject& t, const Components& g) const;
  bool is_flat_morphism(const FlatObject& s, const FlatObject& t, const Components& g) const;
};

FlattenSlice flatten_slice(const SlicedObject& a);

/// Round-trips objects and hom-sets of both sides for every X in `xs`,
/// counts the enumerated objects on both sides, and rejects iterated
/// objects whose structure map disagrees with tau∘f.
ValidationReport verify_flatten(const FlattenSlice& fl, const std::vector<FinFunctor>& xs, const ModelConfig& config = {});

/// Facts 1-4 of the localization statement for G (with p, i), A over L and R.
ValidationReport localization_check(const EndofunctorData& g, const SlicedObject& a, const FinFunctor& r,
                                    const ModelConfig& config = {});

// ---- enumeration and bundled instances ----------------------------------------

/// All functors with every set of size <= max_size, one per isomorphism
/// class (up_to_iso) or all of them.
std::vector<FinFunctor> enumerate_functors(const CatPtr& c, std::size_t max_size, bool up_to_iso = true);
/// Objects over L with total sets of size <= max_size, one per iso class over L.
std::vector<SlicedObject> enumerate_sliced(const FinFunctor& l, std::size_t max_size, const ModelConfig& config = {});

/// The bundled index categories: terminal, discrete pair, arrow, Z/2,
/// idempotent monoid, isomorphic pair.
std::vector<CatPtr> bundled_categories();
CatPtr bundled_category(const std::string& name);
/// Endofunctor instances on `c` (always including the identity).
std::vector<EndofunctorData> bundled_endofunctors(const CatPtr& c);
/// Endofunctor used as a known non-example (constant at the arrow's source).
EndofunctorData constant_endofunctor(const CatPtr& c, std::size_t object);

}  // namespace weilad::fincat
