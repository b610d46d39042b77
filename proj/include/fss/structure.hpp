#ifndef FSS_STRUCTURE_HPP
#define FSS_STRUCTURE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fss {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One class of balls: how many maximal proper subballs it has and the
/// class of each one. All indices are 0-based internally; the text formats
/// are 1-based.
struct BallType {
    int arity = 0;
    std::vector<int> child_type;  // size arity
};

/// A self-similarity of a class representative, presented as a map-state:
/// it permutes the child balls and restricts to a further symbol on each.
/// `restriction[n]` is the restriction to child n (before permuting), and
/// must have the type of child n.
struct LocalSymbol {
    std::string id;
    int type = 0;
    std::vector<int> child_perm;   // child_perm[n] = image slot of child n
    std::vector<int> restriction;  // symbol index per child slot; -1 = dangling
};

struct Violation {
    std::string axiom;  // Arity | Permutation | Restrictions | Identities | Inverses | Compositions
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// A finite similarity structure over a compact ultrametric space with
/// finitely many ball classes. Immutable after construction; all member
/// functions are const and safe to call concurrently.
///
/// Semantic equality of symbols is bisimulation equivalence of map-states,
/// computed once by partition refinement over the symbol table together
/// with all product and inverse states. Composition and inversion return
/// the canonical table symbol of the resulting class.
class Structure {
public:
    Structure(std::vector<BallType> types, std::vector<LocalSymbol> symbols,
              std::vector<int> identity);

    int type_count() const { return static_cast<int>(types_.size()); }
    const BallType& type(int t) const { return types_.at(t); }
    int arity(int t) const { return types_.at(t).arity; }
    int child_type(int t, int slot) const { return types_.at(t).child_type.at(slot); }
    int symbol_count() const { return static_cast<int>(symbols_.size()); }
    const LocalSymbol& symbol(int s) const { return symbols_.at(s); }
    int identity_of(int t) const { return identity_.at(t); }
    int symbol_index(const std::string& id) const;  // -1 when unknown

    const ValidationReport& validate() const { return report_; }

    /// Bisimulation equivalence of two table symbols.
    bool symbols_equal(int a, int b) const;
    /// Canonical representative of a symbol's class (the designated identity
    /// when the class is the identity class).
    int canonical(int a) const;
    /// Table symbol equal to a after b (b applied first). Errors when the
    /// product state has no table representative.
    int compose(int a, int b) const;
    int invert(int a) const;
    int restrict_sym(int a, int slot) const;
    /// True when the symbol is semantically the identity map.
    bool is_trivial(int a) const;
    /// nullopt for trivial symbols; otherwise the least depth d >= 1 at
    /// which the symbol moves some depth-d descendant slot path.
    std::optional<int> nontriviality_depth(int a) const;
    /// Max nontriviality depth over symbols of type t (0 when all trivial).
    int detection_depth(int t) const;

    /// Image of a descendant slot path under a symbol's action.
    std::vector<int> apply_to_path(int sym, const std::vector<int>& path) const;
    /// Restriction of a symbol along a descendant slot path.
    int restrict_along(int sym, const std::vector<int>& path) const;

private:
    void check_structural();
    void build_semantics();
    void check_axioms();
    void require_semantics() const;

    std::vector<BallType> types_;
    std::vector<LocalSymbol> symbols_;
    std::vector<int> identity_;  // per type; -1 = not designated
    ValidationReport report_;

    // semantic tables, present iff the table is structurally sound
    bool semantics_ok_ = false;
    std::vector<int> class_of_;              // bisimulation class per symbol
    std::vector<int> class_rep_;             // canonical table symbol per class
    std::vector<bool> trivial_;
    std::vector<int> depth_;                 // 0 for trivial symbols
    std::vector<std::vector<int>> comp_;     // comp_[a][b'] over same-type symbols, -1 = escapes
    std::vector<int> inv_;                   // -1 = escapes
    std::vector<std::vector<int>> by_type_;  // symbol indices per type
    std::vector<int> pos_in_type_;
};

/// Parses the line-oriented structure format:
///   type <i> arity <l> children <t1> ... <tl>
///   symbol <id> type <i> perm <p1> ... <pl> restrict <id1> ... <idl>
///   identity <i> <id>
/// Blank lines and `#` comments are ignored. Duplicate declarations and
/// dangling symbol references are rejected.
Structure parse_structure(const std::string& text);

std::string format_structure(const Structure& st);

}  // namespace fss

#endif
