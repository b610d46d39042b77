#include "fss/address.hpp"

#include <sstream>

namespace fss {

bool is_prefix(const Address& a, const Address& b) {
    if (a.path.size() > b.path.size()) return false;
    return std::equal(a.path.begin(), a.path.end(), b.path.begin());
}

int address_type(const Structure& st, const Address& a) {
    int t = 0;
    for (int slot : a.path) {
        if (slot < 0 || slot >= st.arity(t))
            throw Error("address " + format_address(a) + " leaves the arity of type " +
                        std::to_string(t + 1));
        t = st.child_type(t, slot);
    }
    return t;
}

bool address_valid(const Structure& st, const Address& a) {
    int t = 0;
    for (int slot : a.path) {
        if (slot < 0 || slot >= st.arity(t)) return false;
        t = st.child_type(t, slot);
    }
    return true;
}

StackWord word_of_address(const Address& a, const Structure& st) {
    StackWord w;
    int t = 0;
    for (int slot : a.path) {
        if (slot < 0 || slot >= st.arity(t))
            throw Error("address " + format_address(a) + " is not valid in this structure");
        int ct = st.child_type(t, slot);
        w.tokens.push_back(Token::child(ct, slot));
        t = ct;
    }
    w.tokens.push_back(Token::hash());
    return w;
}

std::optional<std::vector<int>> token_context(const Structure& st, const TokenString& toks,
                                              bool full) {
    std::vector<int> ctx;
    ctx.reserve(toks.size() + 1);
    int t = 0;
    bool hash_seen = false;
    for (const Token& tok : toks) {
        if (hash_seen) return std::nullopt;  // Hash must be last
        ctx.push_back(t);
        switch (tok.kind) {
            case Token::Kind::Child:
                if (tok.slot < 0 || tok.slot >= st.arity(t)) return std::nullopt;
                if (st.child_type(t, tok.slot) != tok.ball_type) return std::nullopt;
                t = tok.ball_type;
                break;
            case Token::Kind::Sym:
                if (tok.symbol < 0 || tok.symbol >= st.symbol_count()) return std::nullopt;
                if (st.symbol(tok.symbol).type != t) return std::nullopt;
                break;
            case Token::Kind::Hash:
                hash_seen = true;
                break;
        }
    }
    ctx.push_back(t);
    if (full && !hash_seen) return std::nullopt;
    return ctx;
}

void require_word(const Structure& st, const StackWord& w) {
    if (!token_context(st, w.tokens, true))
        throw Error("malformed stack word: " + format_stack_word(st, w));
}

std::vector<Redex> find_redexes(const Structure& st, const TokenString& toks) {
    std::vector<Redex> out;
    for (int i = 0; i < static_cast<int>(toks.size()); ++i) {
        if (toks[i].kind != Token::Kind::Sym) continue;
        if (st.is_trivial(toks[i].symbol)) out.push_back({i, Rule::Identities});
        if (i + 1 < static_cast<int>(toks.size())) {
            switch (toks[i + 1].kind) {
                case Token::Kind::Child: out.push_back({i, Rule::Restriction}); break;
                case Token::Kind::Sym: out.push_back({i, Rule::GroupMult}); break;
                case Token::Kind::Hash: out.push_back({i, Rule::Absorption}); break;
            }
        }
    }
    return out;
}

TokenString apply_redex(const Structure& st, const TokenString& toks, const Redex& r) {
    TokenString out;
    out.reserve(toks.size());
    out.assign(toks.begin(), toks.begin() + r.pos);
    switch (r.rule) {
        case Rule::Identities:
            out.insert(out.end(), toks.begin() + r.pos + 1, toks.end());
            break;
        case Rule::Restriction: {
            const Token& f = toks[r.pos];
            const Token& a = toks[r.pos + 1];
            const LocalSymbol& sym = st.symbol(f.symbol);
            out.push_back(Token::child(a.ball_type, sym.child_perm.at(a.slot)));
            out.push_back(Token::sym(sym.restriction.at(a.slot)));
            out.insert(out.end(), toks.begin() + r.pos + 2, toks.end());
            break;
        }
        case Rule::GroupMult: {
            out.push_back(Token::sym(st.compose(toks[r.pos].symbol, toks[r.pos + 1].symbol)));
            out.insert(out.end(), toks.begin() + r.pos + 2, toks.end());
            break;
        }
        case Rule::Absorption:
            out.insert(out.end(), toks.begin() + r.pos + 1, toks.end());
            break;
    }
    return out;
}

std::pair<long, long> rewrite_measure(const TokenString& toks) {
    long child_right = 0, syms = 0, pairs = 0;
    for (auto it = toks.rbegin(); it != toks.rend(); ++it) {
        if (it->kind == Token::Kind::Child) ++child_right;
        if (it->kind == Token::Kind::Sym) {
            ++syms;
            pairs += child_right;
        }
    }
    return {pairs, syms};
}

TokenString normalize_tokens(const Structure& st, const TokenString& toks) {
    TokenString cur = toks;
    for (;;) {
        auto redexes = find_redexes(st, cur);
        if (redexes.empty()) return cur;
        cur = apply_redex(st, cur, redexes.front());
    }
}

StackWord normalize(const Structure& st, const StackWord& w) {
    require_word(st, w);
    return StackWord{normalize_tokens(st, w.tokens)};
}

Address evaluate(const Structure& st, const StackWord& w) {
    StackWord red = normalize(st, w);
    Address a;
    for (const Token& t : red.tokens)
        if (t.kind == Token::Kind::Child) a.path.push_back(t.slot);
    return a;
}

void require_ball_map(const Structure& st, const BallMap& f) {
    int ts = address_type(st, f.source);
    int tt = address_type(st, f.target);
    if (ts != tt)
        throw Error("ball map endpoints " + format_address(f.source) + " and " +
                    format_address(f.target) + " have different types");
    if (f.sym < 0 || f.sym >= st.symbol_count() || st.symbol(f.sym).type != ts)
        throw Error("ball map symbol does not match the endpoint type");
}

std::optional<StackWord> apply_phi(const Structure& st, const BallMap& f, const StackWord& w) {
    require_ball_map(st, f);
    require_word(st, w);
    TokenString src = word_of_address(f.source, st).tokens;
    src.pop_back();  // drop Hash
    if (w.tokens.size() < src.size() ||
        !std::equal(src.begin(), src.end(), w.tokens.begin()))
        return std::nullopt;
    StackWord out;
    TokenString dst = word_of_address(f.target, st).tokens;
    dst.pop_back();
    out.tokens = std::move(dst);
    out.tokens.push_back(Token::sym(f.sym));
    out.tokens.insert(out.tokens.end(), w.tokens.begin() + src.size(), w.tokens.end());
    return out;
}

std::string format_address(const Address& a) {
    if (a.path.empty()) return "/";
    std::string out;
    for (int slot : a.path) {
        out += '/';
        out += std::to_string(slot + 1);
    }
    return out;
}

Address parse_address(const std::string& text) {
    if (text.empty() || text[0] != '/')
        throw Error("address must start with '/': '" + text + "'");
    Address a;
    size_t i = 1;
    while (i < text.size()) {
        size_t j = text.find('/', i);
        if (j == std::string::npos) j = text.size();
        if (j == i) throw Error("empty slot in address '" + text + "'");
        try {
            a.path.push_back(std::stoi(text.substr(i, j - i)) - 1);
        } catch (const std::exception&) {
            throw Error("bad slot in address '" + text + "'");
        }
        i = j + 1;
    }
    return a;
}

std::string format_token(const Structure& st, const Token& t) {
    switch (t.kind) {
        case Token::Kind::Child:
            return "A(" + std::to_string(t.ball_type + 1) + "," + std::to_string(t.slot + 1) + ")";
        case Token::Kind::Sym: return "[" + st.symbol(t.symbol).id + "]";
        case Token::Kind::Hash: return "#";
    }
    return "?";
}

std::string format_tokens(const Structure& st, const TokenString& toks) {
    std::string out;
    for (const Token& t : toks) {
        if (!out.empty()) out += ' ';
        out += format_token(st, t);
    }
    return out;
}

std::string format_stack_word(const Structure& st, const StackWord& w) {
    std::string out = "A(1,-)";
    for (const Token& t : w.tokens) {
        out += ' ';
        out += format_token(st, t);
    }
    return out;
}

StackWord parse_stack_word(const Structure& st, const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    StackWord w;
    bool first = true;
    while (in >> tok) {
        if (first) {
            if (tok != "A(1,-)")
                throw Error("stack word must start with the root token A(1,-)");
            first = false;
            continue;
        }
        if (tok == "#") {
            w.tokens.push_back(Token::hash());
        } else if (tok.size() >= 3 && tok.front() == '[' && tok.back() == ']') {
            std::string id = tok.substr(1, tok.size() - 2);
            int s = st.symbol_index(id);
            if (s < 0) throw Error("unknown symbol '" + id + "' in stack word");
            w.tokens.push_back(Token::sym(s));
        } else if (tok.size() >= 6 && tok.rfind("A(", 0) == 0 && tok.back() == ')') {
            auto comma = tok.find(',');
            if (comma == std::string::npos) throw Error("bad ball token '" + tok + "'");
            try {
                int type = std::stoi(tok.substr(2, comma - 2)) - 1;
                int slot = std::stoi(tok.substr(comma + 1, tok.size() - comma - 2)) - 1;
                w.tokens.push_back(Token::child(type, slot));
            } catch (const std::exception&) {
                throw Error("bad ball token '" + tok + "'");
            }
        } else {
            throw Error("unrecognized stack-word token '" + tok + "'");
        }
    }
    if (first) throw Error("empty stack word");
    require_word(st, w);
    return w;
}

}  // namespace fss
