#pragma once

/*
 * States, declarative programs, vocabularies, statements and languages.
 *
 * A program is a subset of a finite state space, held as a 64-bit word with
 * bit i set when state i+1 is a member. A statement is a subset of a
 * vocabulary, held as a bitmask over vocabulary indices. A language is the
 * downward-closed family of statements whose member programs share at least
 * one state; the intersection of no programs is the whole state space, so
 * the empty statement belongs to every language.
 */

#include "vtask/bitset.hpp"
#include "vtask/error.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vtask {

class StateSpace
{
public:
    static constexpr unsigned max_states = 64;

    explicit StateSpace(unsigned n_states) : n_states_(n_states)
    {
        if (n_states == 0 || n_states > max_states)
            throw MalformedInputError("state space must hold between 1 and " + std::to_string(max_states) +
                                      " states, got " + std::to_string(n_states));
    }

    unsigned n_states() const { return n_states_; }

    std::uint64_t mask() const
    {
        return n_states_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_states_) - 1;
    }

    bool operator==(const StateSpace &) const = default;

private:
    unsigned n_states_;
};

class Program
{
public:
    Program(std::uint64_t bits, unsigned width) : bits_(bits), width_(width)
    {
        StateSpace space(width);
        if ((bits & ~space.mask()) != 0)
            throw MalformedInputError("program has states outside its width of " + std::to_string(width));
    }

    Program(std::uint64_t bits, StateSpace space) : Program(bits, space.n_states()) {}

    static Program all_states(StateSpace space) { return {space.mask(), space}; }

    std::uint64_t bits() const { return bits_; }
    unsigned width() const { return width_; }
    bool empty() const { return bits_ == 0; }
    unsigned cardinality() const { return static_cast<unsigned>(std::popcount(bits_)); }

    /// Zero-based state index.
    bool has_state(unsigned state) const { return state < width_ && ((bits_ >> state) & 1U) != 0; }

    /// Bitstring notation: the leftmost character is state 1.
    std::string literal() const
    {
        std::string out(width_, '0');
        for (unsigned i = 0; i < width_; ++i)
            if (has_state(i))
                out[i] = '1';
        return out;
    }

    bool operator==(const Program &) const = default;

    /// Orders by width, then by the literal string. Among equal widths the
    /// program lacking the lowest state where the two differ is smaller.
    std::strong_ordering operator<=>(const Program & other) const
    {
        if (auto c = width_ <=> other.width_; c != 0)
            return c;
        const std::uint64_t diff = bits_ ^ other.bits_;
        if (diff == 0)
            return std::strong_ordering::equal;
        const unsigned first = static_cast<unsigned>(std::countr_zero(diff));
        return has_state(first) ? std::strong_ordering::greater : std::strong_ordering::less;
    }

private:
    std::uint64_t bits_;
    unsigned width_;
};

class Statement
{
public:
    using mask_type = std::uint32_t;

    constexpr Statement() = default;
    constexpr explicit Statement(mask_type members) : members_(members) {}

    static Statement of(std::initializer_list<unsigned> indices)
    {
        mask_type m = 0;
        for (auto i : indices)
            m |= mask_type{1} << i;
        return Statement(m);
    }

    constexpr mask_type mask() const { return members_; }
    constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(members_)); }
    constexpr bool empty() const { return members_ == 0; }
    constexpr bool contains(unsigned index) const { return ((members_ >> index) & 1U) != 0; }
    constexpr bool is_subset_of(Statement other) const { return (members_ & ~other.members_) == 0; }
    constexpr Statement with(unsigned index) const { return Statement(members_ | (mask_type{1} << index)); }
    constexpr Statement united(Statement other) const { return Statement(members_ | other.members_); }

    constexpr bool operator==(const Statement &) const = default;

    /// Canonical order: member count, then mask value.
    constexpr std::strong_ordering operator<=>(const Statement & other) const
    {
        if (auto c = size() <=> other.size(); c != 0)
            return c;
        return members_ <=> other.members_;
    }

private:
    mask_type members_ = 0;
};

class Vocabulary
{
public:
    static constexpr std::size_t max_size = 20;

    /// Programs are stored in canonical (literal) order; their position is
    /// the index used by statements.
    Vocabulary(StateSpace space, std::vector<Program> programs) : space_(space), programs_(std::move(programs))
    {
        if (programs_.size() > max_size)
            throw CapacityError("vocabulary has " + std::to_string(programs_.size()) +
                                " programs; the materialization cap is " + std::to_string(max_size) +
                                " (engineering limit, not part of the formalism)");
        for (const auto & p : programs_)
            if (p.width() != space_.n_states())
                throw MalformedInputError("program " + p.literal() + " has width " + std::to_string(p.width()) +
                                          ", expected " + std::to_string(space_.n_states()));
        std::sort(programs_.begin(), programs_.end());
        auto dup = std::adjacent_find(programs_.begin(), programs_.end());
        if (dup != programs_.end())
            throw MalformedInputError("duplicate program " + dup->literal() + " in vocabulary");
    }

    StateSpace space() const { return space_; }
    std::size_t size() const { return programs_.size(); }
    bool empty() const { return programs_.empty(); }
    std::span<const Program> programs() const { return programs_; }
    const Program & operator[](std::size_t i) const { return programs_[i]; }

    std::optional<std::size_t> index_of(const Program & p) const
    {
        auto it = std::lower_bound(programs_.begin(), programs_.end(), p);
        if (it == programs_.end() || *it != p)
            return std::nullopt;
        return static_cast<std::size_t>(it - programs_.begin());
    }

    /// Mask selecting every program of the vocabulary.
    Statement::mask_type all_members() const
    {
        return static_cast<Statement::mask_type>((std::uint64_t{1} << programs_.size()) - 1);
    }

    bool operator==(const Vocabulary &) const = default;

private:
    StateSpace space_;
    std::vector<Program> programs_;
};

/// Bitwise AND of the programs. The intersection of no programs is the full
/// state space.
inline Program intersect_programs(std::span<const Program> programs, StateSpace space)
{
    std::uint64_t acc = space.mask();
    for (const auto & p : programs) {
        if (p.width() != space.n_states())
            throw MalformedInputError("program " + p.literal() + " does not have width " +
                                      std::to_string(space.n_states()));
        acc &= p.bits();
    }
    return {acc, space};
}

inline Program intersect_programs(std::initializer_list<Program> programs, StateSpace space)
{
    return intersect_programs(std::span<const Program>(programs.begin(), programs.size()), space);
}

namespace detail {

inline std::uint64_t members_intersection(Statement s, const Vocabulary & vocab)
{
    if ((s.mask() & ~vocab.all_members()) != 0)
        throw MalformedInputError("statement references a program index outside a vocabulary of size " +
                                  std::to_string(vocab.size()));
    std::uint64_t acc = vocab.space().mask();
    for_each_bit(s.mask(), [&](unsigned i) { acc &= vocab[i].bits(); });
    return acc;
}

} // namespace detail

inline bool is_statement(Statement members, const Vocabulary & vocab)
{
    return detail::members_intersection(members, vocab) != 0;
}

inline bool is_statement(std::span<const std::size_t> indices, const Vocabulary & vocab)
{
    Statement::mask_type m = 0;
    for (auto i : indices) {
        if (i >= vocab.size())
            throw MalformedInputError("program index " + std::to_string(i) + " is outside a vocabulary of size " +
                                      std::to_string(vocab.size()));
        m |= Statement::mask_type{1} << i;
    }
    return is_statement(Statement(m), vocab);
}

class Language
{
public:
    const Vocabulary & vocabulary() const { return vocab_; }
    std::size_t size() const { return statements_.size(); }
    std::span<const Statement> statements() const { return statements_; }
    const Statement & at(std::size_t pos) const { return statements_.at(pos); }

    std::optional<std::size_t> position(Statement s) const
    {
        if ((s.mask() & ~vocab_.all_members()) != 0)
            return std::nullopt;
        const auto p = position_[s.mask()];
        if (p < 0)
            return std::nullopt;
        return static_cast<std::size_t>(p);
    }

    bool contains(Statement s) const { return position(s).has_value(); }

    /// Position of `s`, or DomainError when it is not a statement of this language.
    std::size_t require(Statement s) const
    {
        if (auto p = position(s))
            return *p;
        throw DomainError("mask " + std::to_string(s.mask()) + " is not a statement of the language");
    }

    StatementSet none() const { return StatementSet(size()); }
    StatementSet all() const { return StatementSet::full(size()); }

    StatementSet make_set(std::span<const Statement> members) const
    {
        StatementSet out(size());
        for (auto s : members)
            out.insert(require(s));
        return out;
    }

    StatementSet make_set(std::initializer_list<Statement> members) const
    {
        return make_set(std::span<const Statement>(members.begin(), members.size()));
    }

    std::vector<Statement> to_statements(const StatementSet & set) const
    {
        std::vector<Statement> out;
        out.reserve(set.size());
        set.for_each([&](std::size_t p) { out.push_back(statements_[p]); });
        return out;
    }

private:
    friend Language build_language(const Vocabulary & vocab);

    Language(Vocabulary vocab, std::vector<Statement> statements)
        : vocab_(std::move(vocab)), statements_(std::move(statements)),
          position_(std::size_t{1} << vocab_.size(), -1)
    {
        for (std::size_t i = 0; i < statements_.size(); ++i)
            position_[statements_[i].mask()] = static_cast<std::int32_t>(i);
    }

    Vocabulary vocab_;
    std::vector<Statement> statements_;
    std::vector<std::int32_t> position_; // indexed by mask, -1 when absent
};

/// Materializes every statement of the vocabulary in canonical order.
inline Language build_language(const Vocabulary & vocab)
{
    const std::size_t n = vocab.size();
    if (n > Vocabulary::max_size)
        throw CapacityError("vocabulary exceeds the materialization cap of " + std::to_string(Vocabulary::max_size));

    const std::size_t subsets = std::size_t{1} << n;
    // intersections[m] is the AND of the programs selected by m
    std::vector<std::uint64_t> intersections(subsets);
    intersections[0] = vocab.space().mask();
    std::vector<Statement> statements;
    statements.push_back(Statement{});
    for (std::size_t m = 1; m < subsets; ++m) {
        const auto low = static_cast<unsigned>(std::countr_zero(m));
        intersections[m] = intersections[m & (m - 1)] & vocab[low].bits();
        if (intersections[m] != 0)
            statements.emplace_back(static_cast<Statement::mask_type>(m));
    }
    std::sort(statements.begin(), statements.end());
    return Language(vocab, std::move(statements));
}

/// Completions of `x` within the language: E_x = { y in L : x ⊆ y }.
inline StatementSet extension_of_statement(Statement x, const Language & lang)
{
    lang.require(x);
    StatementSet out = lang.none();
    const auto full = lang.vocabulary().all_members();
    // supersets of x in increasing mask order
    for (Statement::mask_type y = x.mask();; y = (y + 1) | x.mask()) {
        if (auto p = lang.position(Statement(y)))
            out.insert(*p);
        if (y == full)
            break;
    }
    return out;
}

/// Union of the extensions of the members of `xs`.
inline StatementSet extension_of_set(const StatementSet & xs, const Language & lang)
{
    if (xs.universe() != lang.size())
        throw DomainError("statement set does not belong to this language");
    StatementSet out = lang.none();
    xs.for_each([&](std::size_t p) { out |= extension_of_statement(lang.at(p), lang); });
    return out;
}

inline StatementSet extension_of_set(std::span<const Statement> xs, const Language & lang)
{
    return extension_of_set(lang.make_set(xs), lang);
}

} // namespace vtask
