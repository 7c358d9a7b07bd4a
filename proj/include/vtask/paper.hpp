#pragma once

// The five-state counterexample task α, the colored-box classification
// problem it encodes, and the checks behind `vtask verify-paper`.

#include "vtask/core_model.hpp"
#include "vtask/encoder.hpp"
#include "vtask/format.hpp"
#include "vtask/task_policy.hpp"

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace vtask::paper {

/// Four programs over five states; program i excludes state i, all share state 5.
inline constexpr const char * alpha_literals[4] = {"01111", "10111", "11011", "11101"};

inline StateSpace alpha_space()
{
    return StateSpace(5);
}

inline Vocabulary alpha_vocabulary()
{
    std::vector<Program> programs;
    for (auto lit : alpha_literals)
        programs.push_back(parse_program_literal(lit, alpha_space()));
    return Vocabulary(alpha_space(), std::move(programs));
}

/// Vocabulary index of f1..f4 (1-based name, as written).
inline unsigned f(unsigned i)
{
    static const Vocabulary vocab = alpha_vocabulary();
    return static_cast<unsigned>(*vocab.index_of(parse_program_literal(alpha_literals[i - 1], alpha_space())));
}

inline std::vector<std::string> alpha_names()
{
    std::vector<std::string> names(4);
    for (unsigned i = 1; i <= 4; ++i)
        names[f(i)] = "f" + std::to_string(i);
    return names;
}

inline std::vector<Statement> alpha_inputs()
{
    return {Statement::of({f(1)}), Statement::of({f(2)})};
}

inline std::vector<Statement> alpha_outputs()
{
    return {Statement::of({f(1), f(3)}), Statement::of({f(2), f(4)})};
}

inline Task alpha_task(std::shared_ptr<const Language> lang)
{
    return validate_task(alpha_inputs(), alpha_outputs(), std::move(lang));
}

inline Task alpha_task()
{
    return alpha_task(std::make_shared<const Language>(build_language(alpha_vocabulary())));
}

inline const char * alpha_document_text()
{
    return "# counterexample task alpha\n"
           "states 5\n"
           "program f1 01111\n"
           "program f2 10111\n"
           "program f3 11011\n"
           "program f4 11101\n"
           "input f1\n"
           "input f2\n"
           "output f1 f3\n"
           "output f2 f4\n";
}

/// The colored-box problem: a red and a blue reading of one pixel are the
/// features, and the examples label them as α does. States are listed in a
/// different order from α, so the two tasks are equal only up to relabeling.
inline ClassificationSpec colored_box_spec()
{
    // α's state k is state (k % 5) + 1 here: the shared state moves to state 1
    const StateSpace space(5);
    auto lit = [&](const char * text) { return parse_program_literal(text, space); };
    return {space,
            {{"red_signal", lit("10111")}, {"human_red", lit("11011")}},
            {{"blue_actual", lit("11101")}, {"human_blue", lit("11110")}},
            {{{"red_signal"}, "blue_actual"}, {{"human_red"}, "human_blue"}}};
}

struct VerifyOptions
{
    /// Language construction under test; replaced in fault-injection tests.
    std::function<Language(const Vocabulary &)> build = build_language;
    std::size_t random_vocabularies = 100;
    std::uint64_t seed = 20241028;
};

namespace detail {

inline Vocabulary random_vocabulary(std::mt19937_64 & rng, unsigned max_states, std::size_t max_size)
{
    const unsigned n = std::uniform_int_distribution<unsigned>(1, max_states)(rng);
    const std::uint64_t programs = std::uint64_t{1} << n;
    const std::size_t size = std::uniform_int_distribution<std::size_t>(
        0, std::min<std::size_t>(max_size, static_cast<std::size_t>(programs)))(rng);
    std::vector<std::uint64_t> chosen;
    while (chosen.size() < size) {
        const std::uint64_t b = std::uniform_int_distribution<std::uint64_t>(0, programs - 1)(rng);
        if (std::find(chosen.begin(), chosen.end(), b) == chosen.end())
            chosen.push_back(b);
    }
    std::vector<Program> out;
    for (auto b : chosen)
        out.emplace_back(b, n);
    return Vocabulary(StateSpace(n), std::move(out));
}

} // namespace detail

inline VerificationReport verify_paper(const VerifyOptions & options = {})
{
    VerificationReport report;
    auto check = [&](std::string name, bool passed, std::string detail) {
        report.checks.push_back({std::move(name), passed, std::move(detail)});
    };
    auto count = [](std::size_t n) { return std::to_string(n); };

    auto lang = std::make_shared<const Language>(options.build(alpha_vocabulary()));
    const auto names = alpha_names();
    check("language-size", lang->size() == 16, "|L_v| = " + count(lang->size()) + ", expected 16");
    check("empty-statement", lang->contains(Statement{}), "the empty statement is a member of L_v");

    auto ext = [&](std::initializer_list<unsigned> members) {
        Statement s;
        for (auto i : members)
            s = s.with(f(i));
        return lang->contains(s) ? extension_of_statement(s, *lang) : lang->none();
    };
    auto set = [&](std::initializer_list<std::initializer_list<unsigned>> statements) {
        StatementSet out = lang->none();
        for (auto members : statements) {
            Statement s;
            for (auto i : members)
                s = s.with(f(i));
            if (auto p = lang->position(s))
                out.insert(*p);
        }
        return out;
    };

    const StatementSet e12 = ext({1, 2});
    const StatementSet e23 = ext({2, 3});
    check("extension-f1f2", e12 == set({{1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}}),
          "E_{f1,f2} = {" + render_statements(lang->to_statements(e12), names) + "}");
    check("extension-f2f3", e23 == set({{2, 3}, {1, 2, 3}, {2, 3, 4}, {1, 2, 3, 4}}),
          "E_{f2,f3} = {" + render_statements(lang->to_statements(e23), names) + "}");
    const StatementSet both = lang->contains(Statement::of({f(1), f(2)})) && lang->contains(Statement::of({f(2), f(3)}))
                                  ? extension_of_set(lang->make_set({Statement::of({f(1), f(2)}), Statement::of({f(2), f(3)})}), *lang)
                                  : lang->none();
    check("extension-union",
          both == (e12 | e23) &&
              both == set({{1, 2}, {1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}, {2, 3}, {2, 3, 4}}) && both.size() == 6,
          "E_{{f1,f2},{f2,f3}} has " + count(both.size()) + " distinct statements (8 listed, 2 repeated)");

    {
        auto truth = [](std::initializer_list<const char *> lits) {
            const StateSpace space(static_cast<unsigned>(std::string(*lits.begin()).size()));
            std::vector<Program> ps;
            for (auto l : lits)
                ps.push_back(parse_program_literal(l, space));
            return !intersect_programs(ps, space).empty();
        };
        const bool table = truth({"01", "11"}) && !truth({"01", "10"}) && truth({"011", "111"}) &&
                           !truth({"011", "100"});
        check("nonnull-intersection", table, "01&11, 011&111 nonempty; 01&10, 011&100 empty");
    }

    std::optional<Task> alpha;
    try {
        alpha = alpha_task(lang);
        check("task-alpha", true, "I = {{f1}, {f2}}, O = {{f1, f3}, {f2, f4}} is a valid task");
    } catch (const Error & e) {
        check("task-alpha", false, e.what());
    }

    if (alpha) {
        const auto & in_ext = alpha->input_extension();
        const StatementSet listed = set({{1}, {2}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {1, 2, 3}, {1, 3, 4},
                                         {1, 2, 4}, {2, 3, 4}, {1, 2, 3, 4}});
        check("input-extension", in_ext.size() == 12 && in_ext == listed,
              "|E_I| = " + count(in_ext.size()) + ", expected the 12 listed statements");

        const auto result = find_correct_policies(*alpha, SearchMode::exhaustive);
        auto selected = [&](unsigned i) {
            for (const auto & [p, n] : result.selection_counts)
                if (p.statement == Statement::of({f(i)}))
                    return n;
            return std::size_t{0};
        };
        const std::size_t s1 = selected(1), s2 = selected(2), s3 = selected(3), s4 = selected(4);
        check("selection-counts", s1 == 8 && s2 == 8 && s3 == 6 && s4 == 6,
              "{f1} -> " + count(s1) + ", {f2} -> " + count(s2) + ", {f3} -> " + count(s3) + ", {f4} -> " +
                  count(s4) + "; expected 8, 8, 6, 6");

        const auto length2 = static_cast<std::size_t>(std::count_if(
            lang->statements().begin(), lang->statements().end(), [](Statement s) { return s.size() == 2; }));
        check("length-two-candidates", length2 == 6, count(length2) + " policies of length 2, expected 6");

        const auto bound = max_policy_length_bound(*alpha);
        check("length-bound", bound == 2, "correct policies have at most " + count(bound) + " members, expected 2");

        const auto pruned = find_correct_policies(*alpha, SearchMode::pruned);
        check("no-correct-policy",
              result.checked == 16 && result.correct.empty() && pruned.correct.empty(),
              count(result.correct.size()) + " correct of " + count(result.checked) + " checked (pruned search: " +
                  count(pruned.correct.size()) + " of " + count(pruned.checked) + ")");
    }

    {
        std::mt19937_64 rng(options.seed);
        std::size_t empty_member = 0;
        std::size_t empty_extension = 0;
        for (std::size_t i = 0; i < options.random_vocabularies; ++i) {
            const Language l = options.build(detail::random_vocabulary(rng, 8, 6));
            if (l.contains(Statement{})) {
                ++empty_member;
                if (extension_of_statement(Statement{}, l) == l.all())
                    ++empty_extension;
            }
        }
        const auto n = options.random_vocabularies;
        check("empty-in-every-language", empty_member == n,
              count(empty_member) + "/" + count(n) + " random vocabularies have the empty statement in L_v");
        check("empty-extension-is-language", empty_extension == n,
              count(empty_extension) + "/" + count(n) + " random vocabularies have E_{} = L_v");
    }
    return report;
}

} // namespace vtask::paper
