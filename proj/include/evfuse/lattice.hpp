#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evfuse/errors.hpp"

namespace evfuse {

inline constexpr std::size_t max_frame_atoms = 64;

/// Frames with more atoms than this cannot be enumerated (Dedekind growth);
/// combination itself works on any frame size.
inline constexpr std::size_t max_enumeration_atoms = 4;

/// Frame of discernment: the atomic hypotheses, kept sorted by label.
/// Copies share storage; equality is by atom list (pointer fast path).
class Frame {
public:
    /// Labels must be identifiers ([A-Za-z_][A-Za-z0-9_]*), unique, and at
    /// most max_frame_atoms many. They are stored sorted lexicographically.
    explicit Frame(std::vector<std::string> atoms);

    std::size_t size() const { return impl_->atoms.size(); }
    const std::vector<std::string>& atoms() const { return impl_->atoms; }
    const std::string& label(std::size_t index) const { return impl_->atoms[index]; }
    std::optional<std::size_t> index(std::string_view label) const;

    friend bool operator==(const Frame& a, const Frame& b) {
        return a.impl_ == b.impl_ || a.impl_->atoms == b.impl_->atoms;
    }

private:
    struct Impl {
        std::vector<std::string> atoms;
    };
    std::shared_ptr<const Impl> impl_;
};

/// One conjunction of atoms, as a bitmask over the frame's atom indices.
/// Never empty. Ordered by size, then lexicographically by atom labels
/// (equivalently: by ascending atom-index sequence).
class ProductTerm {
public:
    explicit ProductTerm(std::uint64_t bits);

    static ProductTerm single(std::size_t atom_index) { return ProductTerm(std::uint64_t{1} << atom_index); }

    std::uint64_t bits() const { return bits_; }
    std::size_t size() const;
    bool contains(std::size_t atom_index) const { return (bits_ >> atom_index) & 1u; }
    bool subset_of(const ProductTerm& other) const { return (bits_ & other.bits_) == bits_; }
    std::vector<std::size_t> atom_indices() const;

    friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
    std::strong_ordering operator<=>(const ProductTerm& other) const;

private:
    std::uint64_t bits_;
};

/// A canonical element of the hyper-power set: a reduced monotone DNF, i.e.
/// an antichain of product terms (no term contains another), sorted by term
/// order. The empty antichain is the distinguished zero element. Structural
/// equality coincides with lattice equality.
class Proposition {
public:
    /// The zero element (no terms); serializes as "0".
    static Proposition zero(const Frame& frame);
    static Proposition atom(const Frame& frame, std::string_view label);
    /// Union of all atoms: total ignorance.
    static Proposition total_ignorance(const Frame& frame);

    const Frame& frame() const { return frame_; }
    const std::vector<ProductTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Canonical serialization: terms joined by " | ", atoms within a term
    /// joined by " & ", multi-atom terms parenthesized only when there are
    /// two or more terms. Zero serializes as "0".
    std::string str() const;

    /// Structural comparison over the term lists; callers keep propositions
    /// from different frames apart (operations check frames explicitly).
    bool operator==(const Proposition& other) const { return terms_ == other.terms_; }
    std::strong_ordering operator<=>(const Proposition& other) const;

private:
    friend Proposition canonicalize(const Frame& frame, std::vector<ProductTerm> raw_terms);
    Proposition(Frame frame, std::vector<ProductTerm> sorted_terms)
        : frame_(std::move(frame)), terms_(std::move(sorted_terms)) {}

    Frame frame_;
    std::vector<ProductTerm> terms_;
};

/// Reduce a raw term list to canonical form: drop every term that contains
/// another (absorption), deduplicate, sort. An empty list yields zero.
Proposition canonicalize(const Frame& frame, std::vector<ProductTerm> raw_terms);

/// Lattice meet: distributes over the term lists (pairwise term unions).
Proposition intersect(const Proposition& p, const Proposition& q);

/// Lattice join: concatenation of term lists, then canonicalization.
Proposition unite(const Proposition& p, const Proposition& q);

/// Lattice order: p <= q iff every term of p contains some term of q.
/// Zero is below everything.
bool leq(const Proposition& p, const Proposition& q);

/// Parse "expr := term ('|' term)*, term := factor ('&' factor)*,
/// factor := ATOM | '(' expr ')'" into a canonical proposition.
/// '&' binds tighter than '|'; whitespace is ignored.
Proposition parse_expression(std::string_view text, const Frame& frame);

/// Every canonical proposition over the frame, zero included, in canonical
/// order. Throws ValidationError above max_enumeration_atoms.
std::vector<Proposition> enumerate_hyper_power_set(const Frame& frame);

/// How integrity constraints are interpreted by Model::is_empty.
///
/// declared:   a proposition is empty iff it structurally equals one of the
///             declared constraints (canonical-form match).
/// propagated: the product terms of the constraints are empty, and so is
///             anything below them; a proposition is empty iff each of its
///             terms contains some constraint term.
enum class Emptiness { declared, propagated };

/// A frame plus declared-empty integrity constraints (a hybrid model).
class Model {
public:
    /// Constraints must be over `frame`, non-zero, and distinct from the
    /// total-ignorance proposition.
    Model(Frame frame, std::vector<Proposition> declared_empty,
          Emptiness mode = Emptiness::declared);

    const Frame& frame() const { return frame_; }
    const std::vector<Proposition>& declared_empty() const { return declared_; }
    Emptiness mode() const { return mode_; }

    /// Same constraints under a different emptiness semantics.
    Model with_mode(Emptiness mode) const { return Model(frame_, declared_, mode); }

    /// Zero is always empty; otherwise per the mode above.
    bool is_empty(const Proposition& p) const;

private:
    Frame frame_;
    std::vector<Proposition> declared_;
    std::vector<ProductTerm> empty_terms_;  // minimal antichain of constraint terms
    Emptiness mode_;
};

}  // namespace evfuse
