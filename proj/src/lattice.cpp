#include "evfuse/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <utility>

namespace evfuse {

namespace {

bool is_atom_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_atom_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !is_atom_start(s.front())) return false;
    return std::all_of(s.begin(), s.end(), is_atom_char);
}

void require_same_frame(const Frame& a, const Frame& b, const char* operation) {
    if (!(a == b)) throw ValidationError(std::string(operation) + ": frame mismatch");
}

}  // namespace

Frame::Frame(std::vector<std::string> atoms) {
    if (atoms.empty()) throw ValidationError("frame needs at least one atom");
    if (atoms.size() > max_frame_atoms)
        throw ValidationError("frame exceeds " + std::to_string(max_frame_atoms) + " atoms");
    std::sort(atoms.begin(), atoms.end());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!is_identifier(atoms[i]))
            throw ValidationError("invalid atom label '" + atoms[i] + "'");
        if (i > 0 && atoms[i] == atoms[i - 1])
            throw ValidationError("duplicate atom label '" + atoms[i] + "'");
    }
    impl_ = std::make_shared<const Impl>(Impl{std::move(atoms)});
}

std::optional<std::size_t> Frame::index(std::string_view label) const {
    const auto& v = impl_->atoms;
    auto it = std::lower_bound(v.begin(), v.end(), label);
    if (it == v.end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
}

ProductTerm::ProductTerm(std::uint64_t bits) : bits_(bits) {
    if (bits_ == 0) throw ValidationError("product term needs at least one atom");
}

std::size_t ProductTerm::size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<std::size_t> ProductTerm::atom_indices() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1)
        out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
}

std::strong_ordering ProductTerm::operator<=>(const ProductTerm& other) const {
    const auto sa = size();
    const auto sb = other.size();
    if (sa != sb) return sa <=> sb;
    if (bits_ == other.bits_) return std::strong_ordering::equal;
    // Equal sizes: the side holding the lowest differing atom sorts first.
    const std::uint64_t diff = bits_ ^ other.bits_;
    const std::uint64_t low = diff & (~diff + 1);
    return (bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

Proposition Proposition::zero(const Frame& frame) {
    return canonicalize(frame, {});
}

Proposition Proposition::atom(const Frame& frame, std::string_view label) {
    auto idx = frame.index(label);
    if (!idx) throw ValidationError("unknown atom '" + std::string(label) + "'");
    return canonicalize(frame, {ProductTerm::single(*idx)});
}

Proposition Proposition::total_ignorance(const Frame& frame) {
    std::vector<ProductTerm> terms;
    terms.reserve(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) terms.push_back(ProductTerm::single(i));
    return canonicalize(frame, std::move(terms));
}

std::string Proposition::str() const {
    if (terms_.empty()) return "0";
    const bool parenthesize = terms_.size() >= 2;
    std::string out;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        if (t > 0) out += " | ";
        const auto atoms = terms_[t].atom_indices();
        const bool wrap = parenthesize && atoms.size() >= 2;
        if (wrap) out += '(';
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            if (a > 0) out += " & ";
            out += frame_.label(atoms[a]);
        }
        if (wrap) out += ')';
    }
    return out;
}

std::strong_ordering Proposition::operator<=>(const Proposition& other) const {
    return std::lexicographical_compare_three_way(terms_.begin(), terms_.end(),
                                                  other.terms_.begin(), other.terms_.end());
}

Proposition canonicalize(const Frame& frame, std::vector<ProductTerm> raw_terms) {
    const std::size_t n = frame.size();
    for (const auto& t : raw_terms) {
        if (n < 64 && (t.bits() >> n) != 0)
            throw ValidationError("product term uses atoms outside the frame");
    }
    std::sort(raw_terms.begin(), raw_terms.end());
    std::vector<ProductTerm> kept;
    kept.reserve(raw_terms.size());
    for (const auto& t : raw_terms) {
        // Sorted by size: any absorber of t has already been kept.
        const bool absorbed = std::any_of(kept.begin(), kept.end(),
                                          [&](const ProductTerm& s) { return s.subset_of(t); });
        if (!absorbed) kept.push_back(t);
    }
    return Proposition(frame, std::move(kept));
}

Proposition intersect(const Proposition& p, const Proposition& q) {
    require_same_frame(p.frame(), q.frame(), "intersect");
    if (p.is_zero() || q.is_zero()) return Proposition::zero(p.frame());
    std::vector<ProductTerm> products;
    products.reserve(p.terms().size() * q.terms().size());
    for (const auto& a : p.terms())
        for (const auto& b : q.terms())
            products.push_back(ProductTerm(a.bits() | b.bits()));
    return canonicalize(p.frame(), std::move(products));
}

Proposition unite(const Proposition& p, const Proposition& q) {
    require_same_frame(p.frame(), q.frame(), "unite");
    std::vector<ProductTerm> terms = p.terms();
    terms.insert(terms.end(), q.terms().begin(), q.terms().end());
    return canonicalize(p.frame(), std::move(terms));
}

bool leq(const Proposition& p, const Proposition& q) {
    require_same_frame(p.frame(), q.frame(), "leq");
    for (const auto& t : p.terms()) {
        const bool covered = std::any_of(q.terms().begin(), q.terms().end(),
                                         [&](const ProductTerm& s) { return s.subset_of(t); });
        if (!covered) return false;
    }
    return true;
}

namespace {

struct Token {
    enum class Kind { atom, amp, pipe, lparen, rparen, end };
    Kind kind;
    std::string text;
    std::size_t pos;  // 1-based
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { scan(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        scan();
        return t;
    }

private:
    void scan() {
        while (cursor_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[cursor_])))
            ++cursor_;
        const std::size_t pos = cursor_ + 1;
        if (cursor_ >= text_.size()) {
            current_ = {Token::Kind::end, "", pos};
            return;
        }
        const char c = text_[cursor_];
        switch (c) {
            case '&': current_ = {Token::Kind::amp, "&", pos}; ++cursor_; return;
            case '|': current_ = {Token::Kind::pipe, "|", pos}; ++cursor_; return;
            case '(': current_ = {Token::Kind::lparen, "(", pos}; ++cursor_; return;
            case ')': current_ = {Token::Kind::rparen, ")", pos}; ++cursor_; return;
            default: break;
        }
        if (is_atom_start(c)) {
            std::size_t end = cursor_ + 1;
            while (end < text_.size() && is_atom_char(text_[end])) ++end;
            current_ = {Token::Kind::atom, std::string(text_.substr(cursor_, end - cursor_)), pos};
            cursor_ = end;
            return;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                             std::to_string(pos),
                         pos);
    }

    std::string_view text_;
    std::size_t cursor_ = 0;
    Token current_{Token::Kind::end, "", 1};
};

class ExpressionParser {
public:
    ExpressionParser(std::string_view text, const Frame& frame) : lexer_(text), frame_(frame) {}

    Proposition parse() {
        Proposition p = parse_union();
        const Token& t = lexer_.peek();
        if (t.kind != Token::Kind::end)
            throw ParseError("unexpected '" + t.text + "' at position " + std::to_string(t.pos),
                             t.pos);
        return p;
    }

private:
    Proposition parse_union() {
        Proposition p = parse_intersection();
        while (lexer_.peek().kind == Token::Kind::pipe) {
            lexer_.take();
            p = unite(p, parse_intersection());
        }
        return p;
    }

    Proposition parse_intersection() {
        Proposition p = parse_factor();
        while (lexer_.peek().kind == Token::Kind::amp) {
            lexer_.take();
            p = intersect(p, parse_factor());
        }
        return p;
    }

    Proposition parse_factor() {
        Token t = lexer_.take();
        if (t.kind == Token::Kind::atom) {
            auto idx = frame_.index(t.text);
            if (!idx)
                throw ParseError("unknown atom '" + t.text + "' at position " +
                                     std::to_string(t.pos),
                                 t.pos);
            return canonicalize(frame_, {ProductTerm::single(*idx)});
        }
        if (t.kind == Token::Kind::lparen) {
            Proposition p = parse_union();
            Token close = lexer_.take();
            if (close.kind != Token::Kind::rparen)
                throw ParseError("expected ')' at position " + std::to_string(close.pos),
                                 close.pos);
            return p;
        }
        const std::string what = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
        throw ParseError("expected atom or '(' but found " + what + " at position " +
                             std::to_string(t.pos),
                         t.pos);
    }

    Lexer lexer_;
    const Frame& frame_;
};

}  // namespace

Proposition parse_expression(std::string_view text, const Frame& frame) {
    return ExpressionParser(text, frame).parse();
}

namespace {

// Antichains are grown by appending terms in increasing term order, so each
// one is produced exactly once and already canonical.
void extend_antichain(const Frame& frame, const std::vector<ProductTerm>& all_terms,
                      std::vector<ProductTerm>& acc, std::size_t start,
                      std::vector<Proposition>& out) {
    out.push_back(canonicalize(frame, acc));
    for (std::size_t i = start; i < all_terms.size(); ++i) {
        const ProductTerm& t = all_terms[i];
        // Later terms are never smaller, so only subset absorption can occur.
        const bool comparable = std::any_of(acc.begin(), acc.end(),
                                            [&](const ProductTerm& m) { return m.subset_of(t); });
        if (comparable) continue;
        acc.push_back(t);
        extend_antichain(frame, all_terms, acc, i + 1, out);
        acc.pop_back();
    }
}

}  // namespace

std::vector<Proposition> enumerate_hyper_power_set(const Frame& frame) {
    if (frame.size() > max_enumeration_atoms)
        throw ValidationError("frame too large to enumerate (max " +
                              std::to_string(max_enumeration_atoms) + " atoms)");
    std::vector<ProductTerm> all_terms;
    const std::uint64_t limit = std::uint64_t{1} << frame.size();
    for (std::uint64_t bits = 1; bits < limit; ++bits) all_terms.push_back(ProductTerm(bits));
    std::sort(all_terms.begin(), all_terms.end());

    std::vector<Proposition> out;
    std::vector<ProductTerm> acc;
    extend_antichain(frame, all_terms, acc, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

Model::Model(Frame frame, std::vector<Proposition> declared_empty, Emptiness mode)
    : frame_(std::move(frame)), declared_(std::move(declared_empty)), mode_(mode) {
    const Proposition ignorance = Proposition::total_ignorance(frame_);
    std::vector<ProductTerm> terms;
    for (const auto& p : declared_) {
        require_same_frame(p.frame(), frame_, "model constraint");
        if (p.is_zero())
            throw ValidationError("the zero proposition cannot be a declared constraint");
        if (p == ignorance)
            throw ValidationError("total ignorance cannot be declared empty");
        terms.insert(terms.end(), p.terms().begin(), p.terms().end());
    }
    empty_terms_ = canonicalize(frame_, std::move(terms)).terms();
}

bool Model::is_empty(const Proposition& p) const {
    require_same_frame(p.frame(), frame_, "is_empty");
    if (p.is_zero()) return true;
    if (mode_ == Emptiness::declared)
        return std::find(declared_.begin(), declared_.end(), p) != declared_.end();
    if (empty_terms_.empty()) return false;
    for (const auto& t : p.terms()) {
        const bool covered = std::any_of(empty_terms_.begin(), empty_terms_.end(),
                                         [&](const ProductTerm& e) { return e.subset_of(t); });
        if (!covered) return false;
    }
    return true;
}

}  // namespace evfuse
