#pragma once

#include "vtask/core_model.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vtask {

/// Each way a candidate ⟨I, O⟩ can fail to be a task.
enum class TaskError
{
    empty_inputs,
    input_not_statement,
    input_equals_language,
    empty_outputs,
    output_outside_extension,
    output_equals_extension,
};

inline std::string_view to_string(TaskError e)
{
    switch (e) {
    case TaskError::empty_inputs: return "empty-inputs";
    case TaskError::input_not_statement: return "input-not-statement";
    case TaskError::input_equals_language: return "input-equals-language";
    case TaskError::empty_outputs: return "empty-outputs";
    case TaskError::output_outside_extension: return "output-outside-extension";
    case TaskError::output_equals_extension: return "output-equals-extension";
    }
    return "unknown";
}

class TaskValidationError : public Error
{
public:
    explicit TaskValidationError(TaskError code)
        : Error("invalid task: " + std::string(to_string(code))), code_(code)
    {
    }

    TaskError code() const { return code_; }

private:
    TaskError code_;
};

/// A validated v-task. Inputs, outputs and the input extension are sets of
/// positions in the shared language.
class Task
{
public:
    const Language & language() const { return *language_; }
    const std::shared_ptr<const Language> & language_ptr() const { return language_; }
    const StatementSet & inputs() const { return inputs_; }
    const StatementSet & outputs() const { return outputs_; }
    const StatementSet & input_extension() const { return input_extension_; }

    std::vector<Statement> input_statements() const { return language_->to_statements(inputs_); }
    std::vector<Statement> output_statements() const { return language_->to_statements(outputs_); }

private:
    friend Task validate_task(std::span<const Statement>, std::span<const Statement>,
                              std::shared_ptr<const Language>);

    Task(std::shared_ptr<const Language> lang, StatementSet in, StatementSet out, StatementSet ext)
        : language_(std::move(lang)), inputs_(std::move(in)), outputs_(std::move(out)),
          input_extension_(std::move(ext))
    {
    }

    std::shared_ptr<const Language> language_;
    StatementSet inputs_;
    StatementSet outputs_;
    StatementSet input_extension_;
};

/// First violated task rule, or nullopt when ⟨I, O⟩ is a task.
inline std::optional<TaskError> check_task(std::span<const Statement> inputs, std::span<const Statement> outputs,
                                           const Language & lang)
{
    if (inputs.empty())
        return TaskError::empty_inputs;
    StatementSet in = lang.none();
    for (auto s : inputs) {
        auto p = lang.position(s);
        if (!p)
            return TaskError::input_not_statement;
        in.insert(*p);
    }
    if (in.size() == lang.size())
        return TaskError::input_equals_language;
    if (outputs.empty())
        return TaskError::empty_outputs;
    const StatementSet ext = extension_of_set(in, lang);
    StatementSet out = lang.none();
    for (auto s : outputs) {
        auto p = lang.position(s);
        if (!p || !ext.contains(*p))
            return TaskError::output_outside_extension;
        out.insert(*p);
    }
    if (out == ext)
        return TaskError::output_equals_extension;
    return std::nullopt;
}

inline Task validate_task(std::span<const Statement> inputs, std::span<const Statement> outputs,
                          std::shared_ptr<const Language> lang)
{
    if (auto err = check_task(inputs, outputs, *lang))
        throw TaskValidationError(*err);
    StatementSet in = lang->make_set(inputs);
    StatementSet out = lang->make_set(outputs);
    StatementSet ext = extension_of_set(in, *lang);
    return Task(std::move(lang), std::move(in), std::move(out), std::move(ext));
}

inline Task validate_task(const StatementSet & inputs, const StatementSet & outputs,
                          std::shared_ptr<const Language> lang)
{
    const auto in = lang->to_statements(inputs);
    const auto out = lang->to_statements(outputs);
    return validate_task(in, out, std::move(lang));
}

struct Policy
{
    Statement statement;

    bool operator==(const Policy &) const = default;
    auto operator<=>(const Policy &) const = default;
};

/// A set of statements acting jointly through the union of their extensions.
class SetPolicy
{
public:
    SetPolicy() = default;

    explicit SetPolicy(std::vector<Statement> statements) : statements_(std::move(statements))
    {
        std::sort(statements_.begin(), statements_.end());
        statements_.erase(std::unique(statements_.begin(), statements_.end()), statements_.end());
    }

    std::span<const Statement> statements() const { return statements_; }
    std::size_t size() const { return statements_.size(); }
    bool empty() const { return statements_.empty(); }

    bool operator==(const SetPolicy &) const = default;
    auto operator<=>(const SetPolicy &) const = default;

private:
    std::vector<Statement> statements_;
};

/// E_I ∩ E_π, the part of the input extension a policy selects.
inline StatementSet selection(const Policy & pi, const Task & task)
{
    if (!task.language().contains(pi.statement))
        throw DomainError("policy is not a statement of the task's language");
    return extension_of_statement(pi.statement, task.language()) & task.input_extension();
}

inline StatementSet selection(const SetPolicy & policy, const Task & task)
{
    return extension_of_set(policy.statements(), task.language()) & task.input_extension();
}

inline bool is_correct_policy(const Policy & pi, const Task & task)
{
    return selection(pi, task) == task.outputs();
}

inline bool is_correct_set_policy(const SetPolicy & policy, const Task & task)
{
    return selection(policy, task) == task.outputs();
}

/// Longest policy that can be correct: every selected statement contains the
/// policy, so a correct policy is no longer than the shortest output.
inline std::size_t max_policy_length_bound(const Task & task)
{
    std::size_t bound = task.language().vocabulary().size();
    task.outputs().for_each([&](std::size_t p) { bound = std::min<std::size_t>(bound, task.language().at(p).size()); });
    return bound;
}

enum class SearchMode
{
    exhaustive,
    pruned,
};

inline std::string_view to_string(SearchMode m)
{
    return m == SearchMode::exhaustive ? "exhaustive" : "pruned";
}

struct PolicySearchResult
{
    Task task;
    SearchMode mode;
    std::size_t length_bound;
    std::size_t checked = 0;
    std::vector<Policy> correct;
    /// |E_I ∩ E_π| for every checked policy, in canonical order.
    std::vector<std::pair<Policy, std::size_t>> selection_counts;
};

inline PolicySearchResult find_correct_policies(const Task & task, SearchMode mode = SearchMode::exhaustive)
{
    PolicySearchResult result{task, mode, max_policy_length_bound(task), 0, {}, {}};
    const Language & lang = task.language();
    for (auto s : lang.statements()) {
        if (mode == SearchMode::pruned && s.size() > result.length_bound)
            break; // statements are sorted by size
        ++result.checked;
        const Policy pi{s};
        const StatementSet sel = selection(pi, task);
        result.selection_counts.emplace_back(pi, sel.size());
        if (sel == task.outputs())
            result.correct.push_back(pi);
    }
    return result;
}

struct SetPolicySearchResult
{
    std::size_t cap;
    std::uint64_t checked = 0;
    std::vector<SetPolicy> correct;
};

/// Largest number of set policies an enumeration may visit.
inline constexpr std::uint64_t max_set_policy_candidates = std::uint64_t{1} << 26;

namespace detail {

/// Σ_{k ≤ cap} C(n, k), saturating at `limit + 1`.
inline std::uint64_t bounded_subset_count(std::size_t n, std::size_t cap, std::uint64_t limit)
{
    std::uint64_t total = 0;
    std::uint64_t binom = 1;
    for (std::size_t k = 0; k <= std::min(cap, n); ++k) {
        if (k > 0) {
            // binom = C(n, k); C(n,k) = C(n,k-1) * (n-k+1) / k, exact in this order
            const unsigned __int128 next = static_cast<unsigned __int128>(binom) * (n - k + 1) / k;
            if (next > limit)
                return limit + 1;
            binom = static_cast<std::uint64_t>(next);
        }
        total += binom;
        if (total > limit)
            return limit + 1;
    }
    return total;
}

} // namespace detail

/// Enumerates every set of at most `cap` statements (all subsets of the
/// language when `cap` is absent) and keeps those whose joint selection
/// equals the outputs. Candidates are visited by size, then lexicographically
/// by canonical position.
inline SetPolicySearchResult find_correct_set_policies(const Task & task, std::optional<std::size_t> cap = std::nullopt)
{
    const Language & lang = task.language();
    const std::size_t n = lang.size();
    const std::size_t limit = cap.value_or(n);
    if (detail::bounded_subset_count(n, limit, max_set_policy_candidates) > max_set_policy_candidates)
        throw CapacityError("set-policy enumeration over " + std::to_string(n) + " statements with cap " +
                            std::to_string(limit) + " exceeds " + std::to_string(max_set_policy_candidates) +
                            " candidates; supply a smaller cap");

    std::vector<StatementSet> selections;
    selections.reserve(n);
    for (auto s : lang.statements())
        selections.push_back(selection(Policy{s}, task));

    SetPolicySearchResult result{limit, 0, {}};
    std::vector<std::size_t> chosen;
    std::vector<StatementSet> unions; // unions[d] covers chosen[0..d)

    for (std::size_t size = 0; size <= std::min(limit, n); ++size) {
        chosen.assign(size, 0);
        unions.assign(size + 1, lang.none());
        // depth-first over increasing position tuples of length `size`
        auto visit = [&](auto && self, std::size_t depth, std::size_t start) -> void {
            if (depth == size) {
                ++result.checked;
                if (unions[depth] == task.outputs()) {
                    std::vector<Statement> members;
                    for (auto p : chosen)
                        members.push_back(lang.at(p));
                    result.correct.emplace_back(std::move(members));
                }
                return;
            }
            for (std::size_t p = start; p + (size - depth) <= n; ++p) {
                chosen[depth] = p;
                unions[depth + 1] = unions[depth] | selections[p];
                self(self, depth + 1, p + 1);
            }
        };
        visit(visit, 0, 0);
    }
    return result;
}

/// The union of every statement whose selection stays inside the outputs.
/// A correct set policy exists iff this one is correct, and every correct set
/// policy is a subset of it.
inline std::optional<SetPolicy> maximal_correct_set_policy(const Task & task)
{
    const Language & lang = task.language();
    std::vector<Statement> admissible;
    StatementSet covered = lang.none();
    for (auto s : lang.statements()) {
        const StatementSet sel = selection(Policy{s}, task);
        if (sel.is_subset_of(task.outputs())) {
            admissible.push_back(s);
            covered |= sel;
        }
    }
    if (covered != task.outputs())
        return std::nullopt;
    return SetPolicy(std::move(admissible));
}

struct FailedSubtask
{
    Statement input;
    TaskError reason;
};

struct Decomposition
{
    std::vector<Task> subtasks;
    std::vector<FailedSubtask> failures;
};

/// One binary subtask per input: ⟨{i}, {o ∈ O : i ⊆ o}⟩. Pairs that are not
/// tasks are reported with the rule they break.
inline Decomposition decompose_binary(const Task & task)
{
    Decomposition out;
    const Language & lang = task.language();
    const auto outputs = task.output_statements();
    for (auto input : task.input_statements()) {
        std::vector<Statement> sub_outputs;
        for (auto o : outputs)
            if (input.is_subset_of(o))
                sub_outputs.push_back(o);
        const Statement sub_inputs[] = {input};
        if (auto err = check_task(sub_inputs, sub_outputs, lang))
            out.failures.push_back({input, *err});
        else
            out.subtasks.push_back(validate_task(sub_inputs, sub_outputs, task.language_ptr()));
    }
    return out;
}

/// Weakness is the size of a policy's extension.
inline std::size_t policy_weakness(const Policy & pi, const Language & lang)
{
    return extension_of_statement(pi.statement, lang).size();
}

inline std::size_t policy_weakness(const SetPolicy & policy, const Language & lang)
{
    return extension_of_set(policy.statements(), lang).size();
}

} // namespace vtask
