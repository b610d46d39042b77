#include "fss/structure.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace fss {

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream out;
    for (const auto& v : violations) out << v.axiom << ": " << v.detail << "\n";
    return out.str();
}

Structure::Structure(std::vector<BallType> types, std::vector<LocalSymbol> symbols,
                     std::vector<int> identity)
    : types_(std::move(types)), symbols_(std::move(symbols)), identity_(std::move(identity)) {
    if (types_.empty()) throw Error("structure needs at least one ball type");
    if (identity_.size() != types_.size())
        throw Error("identity designation list must have one entry per type");
    check_structural();
    if (semantics_ok_) {
        build_semantics();
        check_axioms();
    }
}

int Structure::symbol_index(const std::string& id) const {
    for (int s = 0; s < symbol_count(); ++s)
        if (symbols_[s].id == id) return s;
    return -1;
}

void Structure::check_structural() {
    auto flag = [&](const std::string& axiom, const std::string& detail) {
        report_.violations.push_back({axiom, detail});
    };

    for (int t = 0; t < type_count(); ++t) {
        const BallType& bt = types_[t];
        if (bt.arity < 2)
            flag("Arity", "type " + std::to_string(t + 1) + " has arity " +
                              std::to_string(bt.arity) + ", need >= 2");
        if (static_cast<int>(bt.child_type.size()) != bt.arity)
            flag("Arity", "type " + std::to_string(t + 1) + " declares " +
                              std::to_string(bt.child_type.size()) + " children");
        for (int c : bt.child_type)
            if (c < 0 || c >= type_count())
                flag("Arity", "type " + std::to_string(t + 1) + " has child of unknown type " +
                                  std::to_string(c + 1));
    }

    for (int s = 0; s < symbol_count(); ++s) {
        const LocalSymbol& sym = symbols_[s];
        if (sym.type < 0 || sym.type >= type_count()) {
            flag("Permutation", "symbol " + sym.id + " has unknown type");
            continue;
        }
        const BallType& bt = types_[sym.type];
        const int ar = bt.arity;
        if (static_cast<int>(sym.child_perm.size()) != ar) {
            flag("Permutation", "symbol " + sym.id + " has " +
                                    std::to_string(sym.child_perm.size()) + " perm entries, arity is " +
                                    std::to_string(ar));
        } else {
            std::vector<bool> hit(ar, false);
            for (int n = 0; n < ar; ++n) {
                int img = sym.child_perm[n];
                if (img < 0 || img >= ar || hit[img]) {
                    flag("Permutation", "symbol " + sym.id + " child_perm is not a permutation");
                    break;
                }
                hit[img] = true;
                if (static_cast<int>(bt.child_type.size()) == ar &&
                    bt.child_type[img] != bt.child_type[n]) {
                    flag("Permutation", "symbol " + sym.id + " sends child " + std::to_string(n + 1) +
                                            " to a child of a different class");
                    break;
                }
            }
        }
        if (static_cast<int>(sym.restriction.size()) != ar) {
            flag("Restrictions", "symbol " + sym.id + " has " +
                                     std::to_string(sym.restriction.size()) +
                                     " restriction entries, arity is " + std::to_string(ar));
        } else {
            for (int n = 0; n < ar; ++n) {
                int r = sym.restriction[n];
                if (r < 0 || r >= symbol_count()) {
                    flag("Restrictions", "symbol " + sym.id + " restriction on child " +
                                             std::to_string(n + 1) + " is dangling");
                } else if (static_cast<int>(bt.child_type.size()) == ar &&
                           symbols_[r].type != bt.child_type[n]) {
                    flag("Restrictions", "symbol " + sym.id + " restriction on child " +
                                             std::to_string(n + 1) + " has type " +
                                             std::to_string(symbols_[r].type + 1) + ", child has type " +
                                             std::to_string(bt.child_type[n] + 1));
                }
            }
        }
    }

    // Identity designations are checked literally: identity permutation and
    // the identity of the child type on every slot.
    for (int t = 0; t < type_count(); ++t) {
        int id = identity_[t];
        if (id < 0 || id >= symbol_count()) {
            report_.violations.push_back(
                {"Identities", "type " + std::to_string(t + 1) + " has no designated identity"});
            continue;
        }
        const LocalSymbol& sym = symbols_[id];
        if (sym.type != t) {
            report_.violations.push_back(
                {"Identities", "designated identity of type " + std::to_string(t + 1) +
                                   " has type " + std::to_string(sym.type + 1)});
            continue;
        }
        const int ar = types_[t].arity;
        bool good = static_cast<int>(sym.child_perm.size()) == ar &&
                    static_cast<int>(sym.restriction.size()) == ar &&
                    static_cast<int>(types_[t].child_type.size()) == ar;
        for (int n = 0; good && n < ar; ++n) {
            if (sym.child_perm[n] != n) good = false;
            int r = sym.restriction[n];
            if (r < 0 || r >= symbol_count() || r != identity_[types_[t].child_type[n]]) good = false;
        }
        if (!good)
            report_.violations.push_back(
                {"Identities", "symbol " + sym.id + " is designated identity of type " +
                                   std::to_string(t + 1) + " but is not the identity map-state"});
    }

    semantics_ok_ = true;
    for (const auto& v : report_.violations)
        if (v.axiom != "Identities") semantics_ok_ = false;
}

namespace {

// A map-state in the bisimulation arena: table symbols together with all
// product states (pairs, left factor applied second) and inverse states.
struct ArenaNode {
    int type;
    std::vector<int> perm;
    std::vector<int> child;  // arena indices
};

}  // namespace

void Structure::build_semantics() {
    const int n = symbol_count();
    by_type_.assign(type_count(), {});
    pos_in_type_.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        pos_in_type_[s] = static_cast<int>(by_type_[symbols_[s].type].size());
        by_type_[symbols_[s].type].push_back(s);
    }

    // Arena layout: [0,n) base symbols, then one pair node per same-type
    // ordered pair, then one inverse node per symbol.
    std::vector<std::vector<int>> pair_at(n);
    int next = n;
    for (int a = 0; a < n; ++a) {
        pair_at[a].assign(n, -1);
        for (int b = 0; b < n; ++b)
            if (symbols_[a].type == symbols_[b].type) pair_at[a][b] = next++;
    }
    std::vector<int> inv_at(n);
    for (int a = 0; a < n; ++a) inv_at[a] = next++;

    std::vector<ArenaNode> arena(next);
    for (int s = 0; s < n; ++s) {
        arena[s].type = symbols_[s].type;
        arena[s].perm = symbols_[s].child_perm;
        arena[s].child = symbols_[s].restriction;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (pair_at[a][b] < 0) continue;
            const LocalSymbol& fa = symbols_[a];
            const LocalSymbol& fb = symbols_[b];
            const int ar = types_[fa.type].arity;
            ArenaNode& node = arena[pair_at[a][b]];
            node.type = fa.type;
            node.perm.resize(ar);
            node.child.resize(ar);
            for (int slot = 0; slot < ar; ++slot) {
                int mid = fb.child_perm[slot];
                node.perm[slot] = fa.child_perm[mid];
                node.child[slot] = pair_at[fa.restriction[mid]][fb.restriction[slot]];
            }
        }
    for (int a = 0; a < n; ++a) {
        const LocalSymbol& fa = symbols_[a];
        const int ar = types_[fa.type].arity;
        ArenaNode& node = arena[inv_at[a]];
        node.type = fa.type;
        node.perm.resize(ar);
        node.child.resize(ar);
        std::vector<int> perm_inv(ar);
        for (int slot = 0; slot < ar; ++slot) perm_inv[fa.child_perm[slot]] = slot;
        for (int slot = 0; slot < ar; ++slot) {
            node.perm[slot] = perm_inv[slot];
            node.child[slot] = inv_at[fa.restriction[perm_inv[slot]]];
        }
    }

    // Partition refinement on (type, perm, child classes).
    std::vector<int> cls(arena.size(), 0);
    {
        std::map<std::pair<int, std::vector<int>>, int> seed;
        for (size_t i = 0; i < arena.size(); ++i) {
            auto key = std::make_pair(arena[i].type, arena[i].perm);
            auto it = seed.find(key);
            if (it == seed.end()) it = seed.emplace(key, static_cast<int>(seed.size())).first;
            cls[i] = it->second;
        }
    }
    for (;;) {
        std::map<std::pair<int, std::vector<int>>, int> next_ids;
        std::vector<int> next_cls(arena.size());
        for (size_t i = 0; i < arena.size(); ++i) {
            std::vector<int> sig;
            sig.reserve(arena[i].child.size() + 1);
            for (int c : arena[i].child) sig.push_back(cls[c]);
            auto key = std::make_pair(cls[i], sig);
            auto it = next_ids.find(key);
            if (it == next_ids.end())
                it = next_ids.emplace(key, static_cast<int>(next_ids.size())).first;
            next_cls[i] = it->second;
        }
        if (next_cls == cls) break;
        cls = std::move(next_cls);
    }

    int class_count = *std::max_element(cls.begin(), cls.end()) + 1;
    class_of_.assign(n, -1);
    for (int s = 0; s < n; ++s) class_of_[s] = cls[s];

    class_rep_.assign(class_count, -1);
    for (int s = n - 1; s >= 0; --s) class_rep_[cls[s]] = s;  // lowest table index wins
    for (int t = 0; t < type_count(); ++t)
        if (identity_[t] >= 0) class_rep_[cls[identity_[t]]] = identity_[t];

    comp_.assign(n, {});
    for (int a = 0; a < n; ++a) {
        comp_[a].assign(by_type_[symbols_[a].type].size(), -1);
        for (int b : by_type_[symbols_[a].type])
            comp_[a][pos_in_type_[b]] = class_rep_[cls[pair_at[a][b]]];
    }
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) inv_[a] = class_rep_[cls[inv_at[a]]];

    // Triviality is the greatest fixpoint: identity permutation and all
    // restrictions trivial.
    trivial_.assign(n, true);
    for (int s = 0; s < n; ++s) {
        const LocalSymbol& sym = symbols_[s];
        for (int slot = 0; slot < static_cast<int>(sym.child_perm.size()); ++slot)
            if (sym.child_perm[slot] != slot) trivial_[s] = false;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int s = 0; s < n; ++s) {
            if (!trivial_[s]) continue;
            for (int r : symbols_[s].restriction)
                if (!trivial_[r]) {
                    trivial_[s] = false;
                    changed = true;
                    break;
                }
        }
    }

    const int inf = std::numeric_limits<int>::max() / 2;
    depth_.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        if (trivial_[s]) continue;
        bool moves = false;
        for (int slot = 0; slot < static_cast<int>(symbols_[s].child_perm.size()); ++slot)
            if (symbols_[s].child_perm[slot] != slot) moves = true;
        depth_[s] = moves ? 1 : inf;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int s = 0; s < n; ++s) {
            if (trivial_[s] || depth_[s] == 1) continue;
            int best = inf;
            for (int r : symbols_[s].restriction)
                if (!trivial_[r]) best = std::min(best, depth_[r]);
            if (best + 1 < depth_[s]) {
                depth_[s] = best + 1;
                changed = true;
            }
        }
    }
}

void Structure::check_axioms() {
    for (int a = 0; a < symbol_count(); ++a) {
        if (inv_[a] < 0)
            report_.violations.push_back(
                {"Inverses", "inverse of symbol " + symbols_[a].id + " is not in the symbol set"});
        for (int b : by_type_[symbols_[a].type])
            if (comp_[a][pos_in_type_[b]] < 0)
                report_.violations.push_back(
                    {"Compositions", "product " + symbols_[a].id + " * " + symbols_[b].id +
                                         " is not in the symbol set"});
    }
}

void Structure::require_semantics() const {
    if (!semantics_ok_)
        throw Error("operation requires a structurally sound symbol table; validation said:\n" +
                    report_.to_string());
}

bool Structure::symbols_equal(int a, int b) const {
    require_semantics();
    return class_of_.at(a) == class_of_.at(b);
}

int Structure::canonical(int a) const {
    require_semantics();
    return class_rep_.at(class_of_.at(a));
}

int Structure::compose(int a, int b) const {
    require_semantics();
    if (symbols_.at(a).type != symbols_.at(b).type)
        throw Error("compose: symbols " + symbols_[a].id + " and " + symbols_[b].id +
                    " have different types");
    int r = comp_[a][pos_in_type_[b]];
    if (r < 0)
        throw Error("compose: product " + symbols_[a].id + " * " + symbols_[b].id +
                    " is not in the symbol set");
    return r;
}

int Structure::invert(int a) const {
    require_semantics();
    int r = inv_.at(a);
    if (r < 0) throw Error("invert: inverse of " + symbols_[a].id + " is not in the symbol set");
    return r;
}

int Structure::restrict_sym(int a, int slot) const {
    const LocalSymbol& sym = symbols_.at(a);
    if (slot < 0 || slot >= static_cast<int>(sym.restriction.size()))
        throw Error("restrict: slot " + std::to_string(slot + 1) + " out of range for symbol " +
                    sym.id);
    int r = sym.restriction[slot];
    if (r < 0) throw Error("restrict: dangling restriction on symbol " + sym.id);
    return r;
}

bool Structure::is_trivial(int a) const {
    require_semantics();
    return trivial_.at(a);
}

std::optional<int> Structure::nontriviality_depth(int a) const {
    require_semantics();
    if (trivial_.at(a)) return std::nullopt;
    return depth_.at(a);
}

int Structure::detection_depth(int t) const {
    require_semantics();
    int d = 0;
    for (int s : by_type_.at(t))
        if (!trivial_[s]) d = std::max(d, depth_[s]);
    return d;
}

std::vector<int> Structure::apply_to_path(int sym, const std::vector<int>& path) const {
    require_semantics();
    std::vector<int> out;
    out.reserve(path.size());
    int cur = sym;
    for (int slot : path) {
        const LocalSymbol& f = symbols_.at(cur);
        if (slot < 0 || slot >= static_cast<int>(f.child_perm.size()))
            throw Error("apply_to_path: slot out of range");
        out.push_back(f.child_perm[slot]);
        cur = f.restriction[slot];
    }
    return out;
}

int Structure::restrict_along(int sym, const std::vector<int>& path) const {
    require_semantics();
    int cur = sym;
    for (int slot : path) cur = restrict_sym(cur, slot);
    return cur;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_int(const std::string& tok, const std::string& what, int line_no) {
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw Error("line " + std::to_string(line_no) + ": expected " + what + ", got '" + tok +
                    "'");
    }
}

}  // namespace

Structure parse_structure(const std::string& text) {
    struct RawSymbol {
        std::string id;
        int type;
        std::vector<int> perm;
        std::vector<std::string> restrict_ids;
        int line;
    };

    std::map<int, BallType> types;
    std::vector<RawSymbol> raw;
    std::map<std::string, int> sym_index;
    std::map<int, std::pair<std::string, int>> identities;  // type -> (id, line)

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "type") {
            if (toks.size() < 5 || toks[2] != "arity" || toks[4] != "children")
                throw Error("line " + std::to_string(line_no) +
                            ": expected 'type <i> arity <l> children <t1> ...'");
            int idx = parse_int(toks[1], "type index", line_no) - 1;
            int arity = parse_int(toks[3], "arity", line_no);
            if (types.count(idx))
                throw Error("line " + std::to_string(line_no) + ": duplicate type " + toks[1]);
            if (static_cast<int>(toks.size()) - 5 != arity)
                throw Error("line " + std::to_string(line_no) + ": type " + toks[1] + " declares " +
                            std::to_string(toks.size() - 5) + " children, arity is " + toks[3]);
            BallType bt;
            bt.arity = arity;
            for (size_t j = 5; j < toks.size(); ++j)
                bt.child_type.push_back(parse_int(toks[j], "child type", line_no) - 1);
            types[idx] = std::move(bt);
        } else if (kw == "symbol") {
            size_t p = 1;
            auto need = [&](const std::string& what) -> const std::string& {
                if (p >= toks.size())
                    throw Error("line " + std::to_string(line_no) + ": expected " + what);
                return toks[p++];
            };
            RawSymbol rs;
            rs.line = line_no;
            rs.id = need("symbol id");
            if (need("'type'") != "type")
                throw Error("line " + std::to_string(line_no) + ": expected 'type'");
            rs.type = parse_int(need("type index"), "type index", line_no) - 1;
            if (need("'perm'") != "perm")
                throw Error("line " + std::to_string(line_no) + ": expected 'perm'");
            while (p < toks.size() && toks[p] != "restrict")
                rs.perm.push_back(parse_int(toks[p++], "perm entry", line_no) - 1);
            if (p >= toks.size())
                throw Error("line " + std::to_string(line_no) + ": expected 'restrict'");
            ++p;  // skip "restrict"
            while (p < toks.size()) rs.restrict_ids.push_back(toks[p++]);
            if (sym_index.count(rs.id))
                throw Error("line " + std::to_string(line_no) + ": duplicate symbol " + rs.id);
            sym_index[rs.id] = static_cast<int>(raw.size());
            raw.push_back(std::move(rs));
        } else if (kw == "identity") {
            if (toks.size() != 3)
                throw Error("line " + std::to_string(line_no) + ": expected 'identity <i> <id>'");
            int t = parse_int(toks[1], "type index", line_no) - 1;
            if (identities.count(t))
                throw Error("line " + std::to_string(line_no) + ": duplicate identity for type " +
                            toks[1]);
            identities[t] = {toks[2], line_no};
        } else {
            throw Error("line " + std::to_string(line_no) + ": unknown directive '" + kw + "'");
        }
    }

    if (types.empty()) throw Error("structure text declares no types");
    int k = 0;
    for (const auto& [idx, bt] : types) {
        (void)bt;
        if (idx != k)
            throw Error("type indices must be consecutive starting at 1; missing type " +
                        std::to_string(k + 1));
        ++k;
    }

    std::vector<BallType> type_list(k);
    for (auto& [idx, bt] : types) type_list[idx] = std::move(bt);

    std::vector<LocalSymbol> symbols;
    symbols.reserve(raw.size());
    for (const RawSymbol& rs : raw) {
        LocalSymbol sym;
        sym.id = rs.id;
        sym.type = rs.type;
        if (sym.type < 0 || sym.type >= k)
            throw Error("line " + std::to_string(rs.line) + ": symbol " + rs.id +
                        " has unknown type");
        sym.child_perm = rs.perm;
        for (const std::string& rid : rs.restrict_ids) {
            auto it = sym_index.find(rid);
            if (it == sym_index.end())
                throw Error("line " + std::to_string(rs.line) + ": symbol " + rs.id +
                            " restricts to undeclared symbol '" + rid + "'");
            sym.restriction.push_back(it->second);
        }
        symbols.push_back(std::move(sym));
    }

    std::vector<int> identity(k, -1);
    for (const auto& [t, entry] : identities) {
        if (t < 0 || t >= k)
            throw Error("line " + std::to_string(entry.second) + ": identity names unknown type");
        auto it = sym_index.find(entry.first);
        if (it == sym_index.end())
            throw Error("line " + std::to_string(entry.second) + ": identity names unknown symbol '" +
                        entry.first + "'");
        identity[t] = it->second;
    }

    return Structure(std::move(type_list), std::move(symbols), std::move(identity));
}

std::string format_structure(const Structure& st) {
    std::ostringstream out;
    for (int t = 0; t < st.type_count(); ++t) {
        out << "type " << t + 1 << " arity " << st.arity(t) << " children";
        for (int c : st.type(t).child_type) out << ' ' << c + 1;
        out << "\n";
    }
    for (int s = 0; s < st.symbol_count(); ++s) {
        const LocalSymbol& sym = st.symbol(s);
        out << "symbol " << sym.id << " type " << sym.type + 1 << " perm";
        for (int p : sym.child_perm) out << ' ' << p + 1;
        out << " restrict";
        for (int r : sym.restriction) out << ' ' << (r >= 0 ? st.symbol(r).id : "?");
        out << "\n";
    }
    for (int t = 0; t < st.type_count(); ++t)
        if (st.identity_of(t) >= 0)
            out << "identity " << t + 1 << ' ' << st.symbol(st.identity_of(t)).id << "\n";
    return out.str();
}

}  // namespace fss
