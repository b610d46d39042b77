#include "fss/element.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace fss {

GroupElement identity_element(const Structure& st) {
    int id = st.identity_of(0);
    if (id < 0) throw Error("structure has no identity symbol for the root type");
    return GroupElement{{BallMap{Address{}, Address{}, id}}};
}

namespace {

// Sources of a valid chart are pairwise disjoint, so the triple whose
// source contains b (if any) is unique.
const BallMap* triple_containing(const GroupElement& g, const Address& b) {
    for (const BallMap& f : g.chart)
        if (is_prefix(f.source, b)) return &f;
    return nullptr;
}

// b inside the source region: walk the symbol down the remaining path.
Address apply_triple(const Structure& st, const BallMap& f, const Address& b) {
    std::vector<int> rest(b.path.begin() + f.source.depth(), b.path.end());
    Address out = f.target;
    std::vector<int> image = st.apply_to_path(f.sym, rest);
    out.path.insert(out.path.end(), image.begin(), image.end());
    return out;
}

bool addresses_partition_space(const Structure& st, std::vector<Address> parts) {
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = i + 1; j < parts.size(); ++j)
            if (is_prefix(parts[i], parts[j]) || is_prefix(parts[j], parts[i])) return false;
    // Coverage: descend from the root; a ball must either lie inside a part
    // or properly contain parts covering all of its children.
    int max_depth = 0;
    for (const Address& p : parts) max_depth = std::max(max_depth, p.depth());
    std::deque<Address> todo{Address{}};
    while (!todo.empty()) {
        Address b = todo.front();
        todo.pop_front();
        bool inside = false;
        for (const Address& p : parts)
            if (is_prefix(p, b)) inside = true;
        if (inside) continue;
        if (b.depth() >= max_depth) return false;
        int t = address_type(st, b);
        for (int slot = 0; slot < st.arity(t); ++slot) {
            Address c = b;
            c.path.push_back(slot);
            todo.push_back(c);
        }
    }
    return true;
}

}  // namespace

void check_chart(const Structure& st, const GroupElement& g) {
    if (g.chart.empty()) throw Error("chart is empty");
    std::vector<Address> sources, targets;
    for (const BallMap& f : g.chart) {
        require_ball_map(st, f);
        sources.push_back(f.source);
        targets.push_back(f.target);
    }
    if (!addresses_partition_space(st, sources))
        throw Error("chart sources do not partition the space");
    if (!addresses_partition_space(st, targets))
        throw Error("chart targets do not partition the space");
}

GroupElement compose(const Structure& st, const GroupElement& g, const GroupElement& h) {
    GroupElement out;
    std::deque<BallMap> todo(h.chart.begin(), h.chart.end());
    while (!todo.empty()) {
        BallMap f = todo.front();
        todo.pop_front();
        if (const BallMap* up = triple_containing(g, f.target)) {
            std::vector<int> rest(f.target.path.begin() + up->source.depth(),
                                  f.target.path.end());
            Address new_target = up->target;
            std::vector<int> image = st.apply_to_path(up->sym, rest);
            new_target.path.insert(new_target.path.end(), image.begin(), image.end());
            int residual = st.restrict_along(up->sym, rest);
            out.chart.push_back({f.source, new_target, st.compose(residual, f.sym)});
        } else {
            // Target properly contains regions of g: split one level.
            int t = address_type(st, f.target);
            const LocalSymbol& sym = st.symbol(f.sym);
            for (int slot = 0; slot < st.arity(t); ++slot) {
                BallMap child;
                child.source = f.source;
                child.source.path.push_back(slot);
                child.target = f.target;
                child.target.path.push_back(sym.child_perm.at(slot));
                child.sym = sym.restriction.at(slot);
                todo.push_back(child);
            }
        }
    }
    return out;
}

GroupElement invert(const Structure& st, const GroupElement& g) {
    GroupElement out;
    out.chart.reserve(g.chart.size());
    for (const BallMap& f : g.chart) out.chart.push_back({f.target, f.source, st.invert(f.sym)});
    return out;
}

std::vector<Address> image_of_ball(const Structure& st, const GroupElement& g, const Address& b) {
    if (const BallMap* f = triple_containing(g, b)) return {apply_triple(st, *f, b)};
    std::vector<Address> out;
    for (const BallMap& f : g.chart)
        if (is_prefix(b, f.source)) out.push_back(f.target);
    if (out.empty())
        throw Error("ball " + format_address(b) + " is not covered by the chart");
    return out;
}

bool is_identity(const Structure& st, const GroupElement& g) {
    for (const BallMap& f : g.chart)
        if (f.source != f.target || !st.is_trivial(f.sym)) return false;
    return true;
}

std::vector<Address> all_addresses(const Structure& st, int max_depth) {
    std::vector<Address> out{Address{}};
    for (size_t i = 0; i < out.size(); ++i) {
        Address a = out[i];
        if (a.depth() >= max_depth) continue;
        int t = address_type(st, a);
        for (int slot = 0; slot < st.arity(t); ++slot) {
            Address c = a;
            c.path.push_back(slot);
            out.push_back(c);
        }
    }
    return out;
}

bool action_equal(const Structure& st, const GroupElement& g, const GroupElement& h, int depth) {
    for (const Address& b : all_addresses(st, depth)) {
        auto ig = image_of_ball(st, g, b);
        auto ih = image_of_ball(st, h, b);
        std::sort(ig.begin(), ig.end());
        std::sort(ih.begin(), ih.end());
        if (ig != ih) return false;
    }
    return true;
}

bool fixes_ball(const Structure& st, const GroupElement& g, const Address& b) {
    // g(b) = b iff g(b) ⊆ b and g⁻¹(b) ⊆ b.
    for (const Address& img : image_of_ball(st, g, b))
        if (!is_prefix(b, img)) return false;
    for (const Address& img : image_of_ball(st, invert(st, g), b))
        if (!is_prefix(b, img)) return false;
    return true;
}

bool balls_intersect(const Address& a, const Address& b) {
    return is_prefix(a, b) || is_prefix(b, a);
}

int GeneratorSet::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

GeneratorSet parse_generators(const Structure& st, const std::string& text) {
    GeneratorSet gens;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto finish_current = [&]() {
        if (gens.names.empty()) return;
        if (gens.elements.back().chart.empty())
            throw Error("generator " + gens.names.back() + " has an empty chart");
        check_chart(st, gens.elements.back());
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "gen") {
            std::string name;
            if (!(ls >> name))
                throw Error("line " + std::to_string(line_no) + ": expected 'gen <name>'");
            finish_current();
            if (gens.index_of(name) >= 0)
                throw Error("line " + std::to_string(line_no) + ": duplicate generator " + name);
            gens.names.push_back(name);
            gens.elements.emplace_back();
        } else if (kw == "map") {
            if (gens.names.empty())
                throw Error("line " + std::to_string(line_no) + ": 'map' before any 'gen'");
            std::string src, arrow, dst, via, sym;
            if (!(ls >> src >> arrow >> dst >> via >> sym) || arrow != "->" || via != "via")
                throw Error("line " + std::to_string(line_no) +
                            ": expected 'map /path -> /path via <symbol>'");
            BallMap f;
            f.source = parse_address(src);
            f.target = parse_address(dst);
            f.sym = st.symbol_index(sym);
            if (f.sym < 0)
                throw Error("line " + std::to_string(line_no) + ": unknown symbol '" + sym + "'");
            gens.elements.back().chart.push_back(f);
        } else {
            throw Error("line " + std::to_string(line_no) + ": unknown directive '" + kw + "'");
        }
    }
    finish_current();
    if (gens.names.empty()) throw Error("generator text declares no generators");
    return gens;
}

std::string format_generators(const Structure& st, const GeneratorSet& gens) {
    std::ostringstream out;
    for (size_t i = 0; i < gens.size(); ++i) {
        out << "gen " << gens.names[i] << "\n";
        for (const BallMap& f : gens.elements[i].chart)
            out << "map " << format_address(f.source) << " -> " << format_address(f.target)
                << " via " << st.symbol(f.sym).id << "\n";
    }
    return out.str();
}

GroupElement from_word(const Structure& st, const GeneratorSet& gens,
                       const std::vector<std::string>& word) {
    GroupElement acc = identity_element(st);
    for (const std::string& name : word) {
        int i = gens.index_of(name);
        if (i < 0) throw Error("unknown generator '" + name + "'");
        acc = compose(st, acc, gens.elements[i]);
    }
    return acc;
}

std::vector<std::string> split_word(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace fss
