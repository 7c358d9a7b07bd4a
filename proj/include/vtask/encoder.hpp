#pragma once

#include "vtask/core_model.hpp"
#include "vtask/search.hpp"
#include "vtask/task_policy.hpp"

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vtask {

class EncodingError : public Error
{
public:
    using Error::Error;
};

struct NamedProgram
{
    std::string name;
    Program program;

    bool operator==(const NamedProgram &) const = default;
};

/// One labelled example: a set of feature names and a single label name.
struct Example
{
    std::vector<std::string> features;
    std::string label;

    bool operator==(const Example &) const = default;
};

struct ClassificationSpec
{
    StateSpace space;
    std::vector<NamedProgram> features;
    std::vector<NamedProgram> labels;
    std::vector<Example> examples;
};

struct EncodedTask
{
    std::shared_ptr<const Language> language;
    /// Program names by vocabulary index.
    std::vector<std::string> names;
    /// Vocabulary indices of the label programs.
    Statement labels;
    Task task;
};

namespace detail {

inline std::string describe_example(std::size_t index, const Example & ex)
{
    std::string s = "example " + std::to_string(index + 1) + " (";
    for (std::size_t i = 0; i < ex.features.size(); ++i)
        s += (i ? "," : "") + ex.features[i];
    return s + " -> " + ex.label + ")";
}

} // namespace detail

/// Inputs are the examples' feature sets; each output is its input with the
/// example's label program added.
inline EncodedTask encode_classification(const ClassificationSpec & spec)
{
    std::vector<NamedProgram> all = spec.features;
    all.insert(all.end(), spec.labels.begin(), spec.labels.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (all[i].name == all[j].name)
                throw EncodingError("program name '" + all[i].name + "' is declared twice");
            if (all[i].program == all[j].program)
                throw EncodingError("programs '" + all[i].name + "' and '" + all[j].name + "' are identical");
        }

    std::vector<Program> programs;
    for (const auto & np : all)
        programs.push_back(np.program);
    Vocabulary vocab(spec.space, std::move(programs));

    std::vector<std::string> names(vocab.size());
    auto index_of = [&](const NamedProgram & np) { return static_cast<unsigned>(*vocab.index_of(np.program)); };
    for (const auto & np : all)
        names[index_of(np)] = np.name;

    auto find = [](const std::vector<NamedProgram> & list, const std::string & name) -> const NamedProgram * {
        auto it = std::find_if(list.begin(), list.end(), [&](const auto & np) { return np.name == name; });
        return it == list.end() ? nullptr : &*it;
    };

    Statement labels;
    for (const auto & np : spec.labels)
        labels = labels.with(index_of(np));

    std::vector<Statement> inputs;
    std::vector<Statement> outputs;
    for (std::size_t k = 0; k < spec.examples.size(); ++k) {
        const Example & ex = spec.examples[k];
        const std::string where = detail::describe_example(k, ex);
        Statement input;
        for (const auto & f : ex.features) {
            const NamedProgram * np = find(spec.features, f);
            if (!np)
                throw EncodingError(where + ": '" + f + "' is not a feature");
            const unsigned idx = index_of(*np);
            if (input.contains(idx))
                throw EncodingError(where + ": feature '" + f + "' is repeated");
            input = input.with(idx);
        }
        const NamedProgram * label = find(spec.labels, ex.label);
        if (!label)
            throw EncodingError(where + ": '" + ex.label + "' is not a label");
        if (!is_statement(input, vocab))
            throw EncodingError(where + ": the features share no state, so the input is not a statement");
        const Statement output = input.with(index_of(*label));
        if (!is_statement(output, vocab))
            throw EncodingError(where + ": the features and label share no state, so the output is not a statement");
        if (std::find(inputs.begin(), inputs.end(), input) != inputs.end())
            throw EncodingError(where + ": this feature set is already labelled by an earlier example");
        inputs.push_back(input);
        outputs.push_back(output);
    }

    auto lang = std::make_shared<const Language>(build_language(vocab));
    Task task = validate_task(inputs, outputs, lang);
    return {std::move(lang), std::move(names), labels, std::move(task)};
}

/// Recovers the examples from an encoded task, in canonical output order,
/// with feature names in vocabulary order.
inline std::vector<Example> read_examples(const EncodedTask & encoded)
{
    std::vector<Example> out;
    for (auto o : encoded.task.output_statements()) {
        Example ex;
        for_each_bit(o.mask() & ~encoded.labels.mask(), [&](unsigned i) { ex.features.push_back(encoded.names[i]); });
        for_each_bit(o.mask() & encoded.labels.mask(), [&](unsigned i) { ex.label = encoded.names[i]; });
        out.push_back(std::move(ex));
    }
    return out;
}

inline bool verify_isomorphism(const Task & a, const Task & b)
{
    const auto na = a.language().vocabulary().space().n_states();
    const auto nb = b.language().vocabulary().space().n_states();
    if (na != nb)
        throw DomainError("tasks live in state spaces of different sizes (" + std::to_string(na) + " and " +
                          std::to_string(nb) + ")");
    return canonicalize_task(a) == canonicalize_task(b);
}

} // namespace vtask
