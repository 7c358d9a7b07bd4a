#pragma once

// Enumeration of vocabularies and tasks over small state spaces, task
// canonicalization under state permutations, and the solvability census.

#include "vtask/core_model.hpp"
#include "vtask/task_policy.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace vtask {

struct SearchSpec
{
    static constexpr unsigned max_states = 10;
    static constexpr unsigned max_vocab_size = 6;
    /// Census tasks range over subsets of the language; 2^16 input sets per vocabulary at most.
    static constexpr std::size_t max_language_size = 16;

    unsigned n_states = 1;
    unsigned vocab_size = 0;
    /// Keep only tasks shaped like an encoded classification problem.
    bool classification_only = false;
    /// One vocabulary per orbit under state permutations.
    bool dedup = false;
    std::optional<std::uint64_t> max_tasks;
    std::optional<std::chrono::milliseconds> time_budget;
    std::size_t exemplar_limit = 5;
};

inline void check_spec(const SearchSpec & spec)
{
    if (spec.n_states == 0 || spec.n_states > SearchSpec::max_states)
        throw CapacityError("census n_states must be between 1 and " + std::to_string(SearchSpec::max_states) +
                            ", got " + std::to_string(spec.n_states));
    if (spec.vocab_size > SearchSpec::max_vocab_size)
        throw CapacityError("census vocab_size must be at most " + std::to_string(SearchSpec::max_vocab_size) +
                            ", got " + std::to_string(spec.vocab_size));
}

/// A task detached from its language: programs in canonical order, inputs
/// and outputs as sorted statements over those programs.
struct TaskSnapshot
{
    unsigned n_states = 0;
    std::vector<Program> programs;
    std::vector<Statement> inputs;
    std::vector<Statement> outputs;

    bool operator==(const TaskSnapshot &) const = default;
    auto operator<=>(const TaskSnapshot &) const = default;
};

inline TaskSnapshot snapshot(const Task & task)
{
    const auto & vocab = task.language().vocabulary();
    return {vocab.space().n_states(), {vocab.programs().begin(), vocab.programs().end()}, task.input_statements(),
            task.output_statements()};
}

inline Task restore(const TaskSnapshot & snap)
{
    Vocabulary vocab(StateSpace(snap.n_states), snap.programs);
    if (!std::equal(vocab.programs().begin(), vocab.programs().end(), snap.programs.begin(), snap.programs.end()))
        throw MalformedInputError("snapshot programs are not in canonical order");
    auto lang = std::make_shared<const Language>(build_language(vocab));
    return validate_task(snap.inputs, snap.outputs, std::move(lang));
}

/// Every program of the space, in canonical order.
inline std::vector<Program> all_programs(StateSpace space)
{
    if (space.n_states() > SearchSpec::max_states)
        throw CapacityError("cannot list all programs over more than " + std::to_string(SearchSpec::max_states) +
                            " states");
    std::vector<Program> out;
    out.reserve(std::size_t{1} << space.n_states());
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << space.n_states()); ++b)
        out.emplace_back(b, space);
    std::sort(out.begin(), out.end());
    return out;
}

/// Relabels states: state s of `p` becomes state perm[s].
inline Program permute_program(const Program & p, std::span<const unsigned> perm)
{
    std::uint64_t out = 0;
    for_each_bit(p.bits(), [&](unsigned s) { out |= std::uint64_t{1} << perm[s]; });
    return {out, p.width()};
}

/// Calls `fn` with every permutation of {0..n-1}; stops early when `fn` returns false.
template <class Fn>
void for_each_state_permutation(unsigned n, Fn && fn)
{
    if (n > SearchSpec::max_states)
        throw CapacityError("state permutations are enumerated for at most " +
                            std::to_string(SearchSpec::max_states) + " states");
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0U);
    do {
        if (!fn(std::span<const unsigned>(perm)))
            return;
    } while (std::next_permutation(perm.begin(), perm.end()));
}

inline TaskSnapshot apply_permutation(const TaskSnapshot & t, std::span<const unsigned> perm)
{
    const std::size_t k = t.programs.size();
    std::vector<std::pair<Program, std::size_t>> moved;
    moved.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
        moved.emplace_back(permute_program(t.programs[i], perm), i);
    std::sort(moved.begin(), moved.end(), [](const auto & a, const auto & b) { return a.first < b.first; });

    std::vector<unsigned> relabel(k);
    TaskSnapshot out;
    out.n_states = t.n_states;
    for (std::size_t r = 0; r < k; ++r) {
        out.programs.push_back(moved[r].first);
        relabel[moved[r].second] = static_cast<unsigned>(r);
    }
    auto map_statements = [&](const std::vector<Statement> & in) {
        std::vector<Statement> mapped;
        mapped.reserve(in.size());
        for (auto s : in) {
            Statement::mask_type m = 0;
            for_each_bit(s.mask(), [&](unsigned i) { m |= Statement::mask_type{1} << relabel[i]; });
            mapped.emplace_back(m);
        }
        std::sort(mapped.begin(), mapped.end());
        return mapped;
    };
    out.inputs = map_statements(t.inputs);
    out.outputs = map_statements(t.outputs);
    return out;
}

/// Least image of the task over all state permutations.
inline TaskSnapshot canonicalize_task(const TaskSnapshot & task)
{
    TaskSnapshot best = task;
    for_each_state_permutation(task.n_states, [&](std::span<const unsigned> perm) {
        TaskSnapshot image = apply_permutation(task, perm);
        if (image < best)
            best = std::move(image);
        return true;
    });
    return best;
}

inline TaskSnapshot canonicalize_task(const Task & task)
{
    return canonicalize_task(snapshot(task));
}

/// True when no state permutation maps the programs to a smaller sorted list.
inline bool is_orbit_representative(std::span<const Program> sorted_programs, unsigned n_states)
{
    bool least = true;
    std::vector<Program> image;
    for_each_state_permutation(n_states, [&](std::span<const unsigned> perm) {
        image.clear();
        for (const auto & p : sorted_programs)
            image.push_back(permute_program(p, perm));
        std::sort(image.begin(), image.end());
        if (std::lexicographical_compare(image.begin(), image.end(), sorted_programs.begin(), sorted_programs.end())) {
            least = false;
            return false;
        }
        return true;
    });
    return least;
}

namespace detail {

/// k-combinations of the canonical program list in lexicographic index order.
class ProgramCombinations
{
public:
    ProgramCombinations(StateSpace space, unsigned k) : space_(space), programs_(all_programs(space)), index_(k)
    {
        std::iota(index_.begin(), index_.end(), std::size_t{0});
        done_ = k > programs_.size();
    }

    std::optional<std::vector<Program>> next()
    {
        if (done_)
            return std::nullopt;
        std::vector<Program> out;
        out.reserve(index_.size());
        for (auto i : index_)
            out.push_back(programs_[i]);
        advance();
        return out;
    }

    StateSpace space() const { return space_; }

private:
    void advance()
    {
        const std::size_t k = index_.size();
        const std::size_t n = programs_.size();
        std::size_t i = k;
        while (i > 0 && index_[i - 1] == n - k + i - 1)
            --i;
        if (i == 0) {
            done_ = true;
            return;
        }
        ++index_[i - 1];
        for (std::size_t j = i; j < k; ++j)
            index_[j] = index_[j - 1] + 1;
    }

    StateSpace space_;
    std::vector<Program> programs_;
    std::vector<std::size_t> index_;
    bool done_ = false;
};

} // namespace detail

/// Every vocabulary of `spec.vocab_size` programs over `spec.n_states`
/// states in canonical order; with `dedup`, orbit representatives only.
/// `fn` returns false to stop.
inline void enumerate_vocabularies(const SearchSpec & spec, const std::function<bool(const Vocabulary &)> & fn)
{
    check_spec(spec);
    const StateSpace space(spec.n_states);
    detail::ProgramCombinations combos(space, spec.vocab_size);
    while (auto programs = combos.next()) {
        if (spec.dedup && !is_orbit_representative(*programs, spec.n_states))
            continue;
        if (!fn(Vocabulary(space, std::move(*programs))))
            return;
    }
}

/// Classification shape: a bijection between inputs and outputs where each
/// output is its input plus one label program used by no input.
inline bool is_classification_shaped(std::span<const Statement> inputs, std::span<const Statement> outputs)
{
    if (inputs.size() != outputs.size())
        return false;
    Statement::mask_type features = 0;
    for (auto i : inputs)
        features |= i.mask();
    std::vector<Statement> matched;
    for (auto o : outputs) {
        const Statement label(o.mask() & ~features);
        const Statement input(o.mask() & features);
        if (label.size() != 1 || std::find(inputs.begin(), inputs.end(), input) == inputs.end())
            return false;
        matched.push_back(input);
    }
    std::sort(matched.begin(), matched.end());
    return std::adjacent_find(matched.begin(), matched.end()) == matched.end();
}

inline void check_census_language(const Language & lang)
{
    if (lang.size() > SearchSpec::max_language_size)
        throw CapacityError("language of " + std::to_string(lang.size()) + " statements exceeds the census cap of " +
                            std::to_string(SearchSpec::max_language_size) + " statements");
}

/// Every task over the language: I ranges over nonempty proper subsets of
/// L_v, O over nonempty proper subsets of E_I, both in increasing position
/// mask order. `fn` returns false to stop.
inline void enumerate_tasks(const std::shared_ptr<const Language> & lang, const SearchSpec & spec,
                            const std::function<bool(const Task &)> & fn)
{
    check_census_language(*lang);
    const std::size_t m = lang->size();
    const std::uint64_t input_sets = std::uint64_t{1} << m;
    for (std::uint64_t in_mask = 1; in_mask + 1 < input_sets; ++in_mask) {
        StatementSet inputs = lang->none();
        for_each_bit(in_mask, [&](unsigned p) { inputs.insert(p); });
        const auto ext_positions = extension_of_set(inputs, *lang).positions();
        const auto input_statements = lang->to_statements(inputs);
        const std::uint64_t output_sets = std::uint64_t{1} << ext_positions.size();
        for (std::uint64_t bits = 1; bits + 1 < output_sets; ++bits) {
            std::vector<Statement> outputs;
            for_each_bit(bits, [&](unsigned b) { outputs.push_back(lang->at(ext_positions[b])); });
            if (spec.classification_only && !is_classification_shaped(input_statements, outputs))
                continue;
            if (!fn(validate_task(input_statements, outputs, lang)))
                return;
        }
    }
}

struct CensusReport
{
    SearchSpec spec;
    std::uint64_t vocabularies = 0;
    /// Candidate ⟨I, O⟩ pairs: I a nonempty proper subset of L_v, O any subset of E_I.
    std::uint64_t tasks_enumerated = 0;
    std::uint64_t tasks_valid = 0;
    std::uint64_t tasks_solvable = 0;
    std::uint64_t tasks_unsolvable = 0;
    std::vector<TaskSnapshot> exemplars;
    bool truncated = false;
    double seconds = 0.0;
    double tasks_per_second = 0.0;
};

namespace detail {

struct VocabularyTally
{
    std::uint64_t enumerated = 0;
    std::uint64_t valid = 0;
    std::uint64_t solvable = 0;
    std::vector<TaskSnapshot> exemplars;
    bool stopped = false;  // deadline hit
    bool limited = false;  // task limit hit
};

using Clock = std::chrono::steady_clock;

/// Census of one vocabulary on 64-bit position masks. A selection E_π ∩ E_I
/// decides every output set at once: an input set contributes one solvable
/// task per distinct selection that is a nonempty proper subset of E_I.
inline VocabularyTally tally_vocabulary(const Vocabulary & vocab, const SearchSpec & spec,
                                        std::optional<std::uint64_t> valid_limit, std::atomic<bool> & stop,
                                        std::optional<Clock::time_point> deadline)
{
    const Language lang = build_language(vocab);
    check_census_language(lang);
    const std::size_t m = lang.size();

    std::vector<std::uint64_t> ext(m);
    for (std::size_t p = 0; p < m; ++p)
        ext[p] = extension_of_statement(lang.at(p), lang).words()[0];

    const std::uint64_t input_sets = std::uint64_t{1} << m;
    std::vector<std::uint64_t> input_ext(input_sets, 0);
    for (std::uint64_t mask = 1; mask < input_sets; ++mask)
        input_ext[mask] = input_ext[mask & (mask - 1)] | ext[static_cast<unsigned>(std::countr_zero(mask))];

    auto statements_of = [&](std::uint64_t mask) {
        std::vector<Statement> out;
        for_each_bit(mask, [&](unsigned p) { out.push_back(lang.at(p)); });
        return out;
    };
    auto exemplar = [&](std::uint64_t in_mask, std::uint64_t out_mask) {
        return TaskSnapshot{vocab.space().n_states(),
                            {vocab.programs().begin(), vocab.programs().end()},
                            statements_of(in_mask),
                            statements_of(out_mask)};
    };

    VocabularyTally tally;
    std::vector<std::uint64_t> selections;
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t in_mask = 1; in_mask + 1 < input_sets; ++in_mask) {
        if ((in_mask & 0xff) == 0) {
            if (stop.load(std::memory_order_relaxed) || (deadline && Clock::now() >= *deadline)) {
                stop = true;
                tally.stopped = true;
                return tally;
            }
        }
        const std::uint64_t e_in = input_ext[in_mask];
        const unsigned e_size = static_cast<unsigned>(std::popcount(e_in));

        selections.clear();
        for (std::size_t p = 0; p < m; ++p) {
            const std::uint64_t sel = ext[p] & e_in;
            if (sel != 0 && sel != e_in)
                selections.push_back(sel);
        }
        std::sort(selections.begin(), selections.end());
        selections.erase(std::unique(selections.begin(), selections.end()), selections.end());
        auto solvable = [&](std::uint64_t o) { return std::binary_search(selections.begin(), selections.end(), o); };

        std::uint64_t valid = 0;
        std::uint64_t solved = 0;
        candidates.clear();
        if (!spec.classification_only) {
            valid = (std::uint64_t{1} << e_size) - 2;
            solved = selections.size();
        } else {
            // outputs are fixed by choosing one unused label program per input
            Statement::mask_type features = 0;
            const auto inputs = statements_of(in_mask);
            for (auto s : inputs)
                features |= s.mask();
            std::vector<std::vector<std::size_t>> choices;
            for (auto s : inputs) {
                std::vector<std::size_t> options;
                for (unsigned l = 0; l < vocab.size(); ++l)
                    if (((features >> l) & 1U) == 0)
                        if (auto pos = lang.position(s.with(l)))
                            options.push_back(*pos);
                choices.push_back(std::move(options));
            }
            std::vector<std::size_t> pick(choices.size(), 0);
            const bool any = std::all_of(choices.begin(), choices.end(), [](const auto & c) { return !c.empty(); });
            while (any) {
                std::uint64_t o = 0;
                for (std::size_t i = 0; i < choices.size(); ++i)
                    o |= std::uint64_t{1} << choices[i][pick[i]];
                if (o != e_in)
                    candidates.push_back(o);
                std::size_t i = 0;
                while (i < pick.size() && ++pick[i] == choices[i].size())
                    pick[i++] = 0;
                if (i == pick.size())
                    break;
            }
            std::sort(candidates.begin(), candidates.end());
            valid = candidates.size();
            solved = static_cast<std::uint64_t>(std::count_if(candidates.begin(), candidates.end(), solvable));
        }

        if (valid_limit && tally.valid + valid > *valid_limit) {
            tally.limited = true;
            return tally;
        }
        tally.enumerated += std::uint64_t{1} << e_size;
        tally.valid += valid;
        tally.solvable += solved;

        if (tally.exemplars.size() < spec.exemplar_limit && solved < valid) {
            auto consider = [&](std::uint64_t o) {
                if (!solvable(o))
                    tally.exemplars.push_back(exemplar(in_mask, o));
                return tally.exemplars.size() < spec.exemplar_limit;
            };
            if (!spec.classification_only) {
                // submasks of e_in in increasing order
                for (std::uint64_t o = (~e_in + 1) & e_in; o != e_in; o = ((o | ~e_in) + 1) & e_in)
                    if (!consider(o))
                        break;
            } else {
                for (auto o : candidates)
                    if (!consider(o))
                        break;
            }
        }
    }
    return tally;
}

} // namespace detail

/// Runs a policy search over every enumerated task and aggregates counts.
/// Work is split across `workers` threads by vocabulary; results are merged
/// in enumeration order so the report does not depend on the split.
inline CensusReport census(const SearchSpec & spec, unsigned workers = 1)
{
    check_spec(spec);
    workers = std::max(1U, workers);
    const auto start = detail::Clock::now();
    std::optional<detail::Clock::time_point> deadline;
    if (spec.time_budget)
        deadline = start + *spec.time_budget;

    CensusReport report;
    report.spec = spec;
    std::atomic<bool> stop{false};
    const StateSpace space(spec.n_states);
    detail::ProgramCombinations combos(space, spec.vocab_size);

    constexpr std::size_t batch_size = 64;
    bool finished = false;
    while (!finished) {
        if (deadline && detail::Clock::now() >= *deadline) {
            report.truncated = true;
            break;
        }
        std::vector<std::vector<Program>> batch;
        while (batch.size() < batch_size) {
            auto next = combos.next();
            if (!next)
                break;
            batch.push_back(std::move(*next));
        }
        if (batch.empty())
            break;

        std::vector<std::optional<detail::VocabularyTally>> tallies(batch.size());
        std::vector<std::exception_ptr> errors(batch.size());
        auto work = [&](unsigned w) {
            for (std::size_t i = w; i < batch.size(); i += workers) {
                try {
                    if (spec.dedup && !is_orbit_representative(batch[i], spec.n_states))
                        continue;
                    tallies[i] = detail::tally_vocabulary(Vocabulary(space, batch[i]), spec, std::nullopt, stop,
                                                          deadline);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> threads;
            for (unsigned w = 0; w < workers; ++w)
                threads.emplace_back(work, w);
        }

        for (std::size_t i = 0; i < batch.size() && !finished; ++i) {
            if (errors[i])
                std::rethrow_exception(errors[i]);
            if (!tallies[i])
                continue;
            detail::VocabularyTally t = std::move(*tallies[i]);
            if (spec.max_tasks && report.tasks_valid + t.valid > *spec.max_tasks) {
                t = detail::tally_vocabulary(Vocabulary(space, batch[i]), spec,
                                             *spec.max_tasks - report.tasks_valid, stop, deadline);
                finished = true;
                report.truncated = true;
            }
            if (t.stopped) {
                finished = true;
                report.truncated = true;
            }
            ++report.vocabularies;
            report.tasks_enumerated += t.enumerated;
            report.tasks_valid += t.valid;
            report.tasks_solvable += t.solvable;
            for (auto & ex : t.exemplars)
                if (report.exemplars.size() < spec.exemplar_limit)
                    report.exemplars.push_back(std::move(ex));
        }
    }

    report.tasks_unsolvable = report.tasks_valid - report.tasks_solvable;
    report.seconds = std::chrono::duration<double>(detail::Clock::now() - start).count();
    report.tasks_per_second = report.seconds > 0 ? static_cast<double>(report.tasks_valid) / report.seconds : 0.0;
    return report;
}

} // namespace vtask
