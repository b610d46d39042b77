#ifndef FSS_ADDRESS_HPP
#define FSS_ADDRESS_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fss/structure.hpp"

namespace fss {

/// A ball, named by its slot path from the root. The root ball (the whole
/// space) is the empty path. Reduced stack words and addresses are in
/// bijection, so this is also the normal form of a stack word.
struct Address {
    std::vector<int> path;  // 0-based child slots

    Address() = default;
    explicit Address(std::vector<int> p) : path(std::move(p)) {}
    int depth() const { return static_cast<int>(path.size()); }
    bool operator==(const Address&) const = default;
    auto operator<=>(const Address&) const = default;
};

/// True when ball(b) is contained in ball(a), i.e. a.path is a prefix of
/// b.path. Sibling subtrees are disjoint, so distinct balls are nested
/// exactly when one path extends the other.
bool is_prefix(const Address& a, const Address& b);

/// Type of the ball named by an address (root has type 0). Throws on slot
/// paths that leave the arity of some type on the way down.
int address_type(const Structure& st, const Address& a);

bool address_valid(const Structure& st, const Address& a);

/// One stack-word token. Child tokens name a ball class and a slot among
/// the parent's children; symbol tokens hold a table symbol; Hash is the
/// initial stack symbol and ends every full word. The root token is
/// implicit in this representation and is printed as A(1,-).
struct Token {
    enum class Kind : uint8_t { Child, Sym, Hash };
    Kind kind = Kind::Hash;
    int ball_type = -1;  // Child only
    int slot = -1;       // Child only
    int symbol = -1;     // Sym only

    static Token child(int type, int slot) { return {Kind::Child, type, slot, -1}; }
    static Token sym(int symbol) { return {Kind::Sym, -1, -1, symbol}; }
    static Token hash() { return {Kind::Hash, -1, -1, -1}; }
    bool operator==(const Token&) const = default;
};

using TokenString = std::vector<Token>;

/// A word of the stack language: child tokens interleaved with symbol
/// tokens, ending with Hash. The child subsequence must form a valid
/// address and each symbol token must have the type current at its
/// position.
struct StackWord {
    TokenString tokens;
    bool operator==(const StackWord&) const = default;
};

StackWord word_of_address(const Address& a, const Structure& st);

/// Checks membership of a token string in the stack language (a full word
/// when `full`, otherwise any prefix of one). On success returns the type
/// current *before* each token position plus the final type.
std::optional<std::vector<int>> token_context(const Structure& st, const TokenString& toks,
                                              bool full);

void require_word(const Structure& st, const StackWord& w);

// ---- rewriting -----------------------------------------------------------

enum class Rule : uint8_t { Identities, Restriction, GroupMult, Absorption };

struct Redex {
    int pos = 0;
    Rule rule = Rule::Identities;
};

/// All positions where a rewriting rule applies. Restriction pushes a
/// symbol token rightward past a child token, GroupMult merges adjacent
/// symbol tokens, Absorption kills a symbol token in front of Hash, and
/// Identities erases tokens whose symbol is semantically the identity.
std::vector<Redex> find_redexes(const Structure& st, const TokenString& toks);

TokenString apply_redex(const Structure& st, const TokenString& toks, const Redex& r);

/// Lexicographic termination measure: (child tokens to the right of symbol
/// tokens, symbol token count). Every rule application strictly decreases
/// it.
std::pair<long, long> rewrite_measure(const TokenString& toks);

/// Normal form under the four rule families, applying the leftmost redex
/// first. Any application order ends at the same word; fixing one keeps
/// traces reproducible.
TokenString normalize_tokens(const Structure& st, const TokenString& toks);

StackWord normalize(const Structure& st, const StackWord& w);

/// The ball a stack word denotes. Constant on rewrite-equivalence classes.
Address evaluate(const Structure& st, const StackWord& w);

/// A similarity between two balls of the same class, carried by a table
/// symbol through the canonical identifications along the two addresses.
struct BallMap {
    Address source;
    Address target;
    int sym = -1;
};

void require_ball_map(const Structure& st, const BallMap& f);

/// Partial action of a ball map on stack words: defined when the word
/// literally starts with the source address, in which case the source
/// prefix is replaced by the target address followed by the symbol token.
std::optional<StackWord> apply_phi(const Structure& st, const BallMap& f, const StackWord& w);

// ---- text ----------------------------------------------------------------

std::string format_address(const Address& a);            // "/", "/1/2"
Address parse_address(const std::string& text);

std::string format_token(const Structure& st, const Token& t);
std::string format_tokens(const Structure& st, const TokenString& toks);  // no root marker
std::string format_stack_word(const Structure& st, const StackWord& w);   // "A(1,-) [s] A(1,2) #"
StackWord parse_stack_word(const Structure& st, const std::string& text);

}  // namespace fss

#endif
