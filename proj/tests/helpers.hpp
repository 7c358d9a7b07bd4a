#pragma once

#include "oracle.hpp"
#include "vtask/vtask.hpp"

#include <algorithm>

#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing_support {

using namespace vtask;

inline oracle::Stmt to_oracle(Statement s, const Vocabulary & vocab)
{
    oracle::Stmt out;
    for_each_bit(s.mask(), [&](unsigned i) { out.insert(vocab[i].literal()); });
    return out;
}

inline oracle::StmtSet to_oracle(const StatementSet & set, const Language & lang)
{
    oracle::StmtSet out;
    for (auto s : lang.to_statements(set))
        out.insert(to_oracle(s, lang.vocabulary()));
    return out;
}

inline oracle::StmtSet to_oracle(const std::vector<Statement> & ss, const Vocabulary & vocab)
{
    oracle::StmtSet out;
    for (auto s : ss)
        out.insert(to_oracle(s, vocab));
    return out;
}

inline std::vector<oracle::Literal> literals(const Vocabulary & vocab)
{
    std::vector<oracle::Literal> out;
    for (const auto & p : vocab.programs())
        out.push_back(p.literal());
    return out;
}

inline oracle::StmtSet oracle_language(const Vocabulary & vocab)
{
    return oracle::language(literals(vocab), vocab.space().n_states());
}

inline Vocabulary random_vocabulary(std::mt19937_64 & rng, unsigned min_states, unsigned max_states,
                                    std::size_t max_size)
{
    const unsigned n = std::uniform_int_distribution<unsigned>(min_states, max_states)(rng);
    const std::uint64_t count = std::uint64_t{1} << n;
    const std::size_t size =
        std::uniform_int_distribution<std::size_t>(0, std::min<std::size_t>(max_size, count))(rng);
    std::vector<std::uint64_t> chosen;
    while (chosen.size() < size) {
        const auto b = std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng);
        if (std::find(chosen.begin(), chosen.end(), b) == chosen.end())
            chosen.push_back(b);
    }
    std::vector<Program> programs;
    for (auto b : chosen)
        programs.emplace_back(b, n);
    return Vocabulary(StateSpace(n), std::move(programs));
}

/// A random valid task over `lang`, or nullopt when none exists or the draw missed.
inline std::optional<Task> random_task(std::mt19937_64 & rng, const std::shared_ptr<const Language> & lang)
{
    const std::size_t m = lang->size();
    if (m < 2)
        return std::nullopt;
    std::bernoulli_distribution coin(0.35);
    std::vector<Statement> inputs;
    for (auto s : lang->statements())
        if (coin(rng))
            inputs.push_back(s);
    if (inputs.empty() || inputs.size() == m)
        return std::nullopt;
    const auto ext = lang->to_statements(extension_of_set(inputs, *lang));
    std::vector<Statement> outputs;
    std::bernoulli_distribution keep(0.4);
    for (auto s : ext)
        if (keep(rng))
            outputs.push_back(s);
    if (outputs.empty() || outputs.size() == ext.size())
        return std::nullopt;
    return validate_task(inputs, outputs, lang);
}

/// Draws until a valid task appears.
inline Task draw_task(std::mt19937_64 & rng, unsigned max_states, std::size_t max_vocab)
{
    while (true) {
        auto lang = std::make_shared<const Language>(build_language(random_vocabulary(rng, 1, max_states, max_vocab)));
        for (int attempt = 0; attempt < 8; ++attempt)
            if (auto t = random_task(rng, lang))
                return *t;
    }
}

/// A random well-formed document in either explicit or example mode.
inline TaskDocument random_document(std::mt19937_64 & rng)
{
    TaskDocument doc;
    doc.n_states = std::uniform_int_distribution<unsigned>(1, 8)(rng);
    const std::uint64_t count = std::uint64_t{1} << doc.n_states;
    const std::size_t total = std::uniform_int_distribution<std::size_t>(0, std::min<std::uint64_t>(count, 6))(rng);
    std::set<std::uint64_t> used;
    const bool examples = total >= 2 && std::bernoulli_distribution(0.5)(rng);
    const std::size_t n_labels = examples ? std::uniform_int_distribution<std::size_t>(1, total - 1)(rng) : 0;
    for (std::size_t i = 0; i < total; ++i) {
        std::uint64_t bits;
        do
            bits = std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng);
        while (!used.insert(bits).second);
        const std::string name = (i % 2 ? "_p" : "Name") + std::to_string(i);
        (i < total - n_labels ? doc.programs : doc.labels).push_back({name, Program(bits, doc.n_states)});
    }
    std::bernoulli_distribution coin(0.5);
    auto pick = [&](const std::vector<NamedProgram> & from) {
        std::vector<std::string> out;
        for (const auto & p : from)
            if (coin(rng))
                out.push_back(p.name);
        std::shuffle(out.begin(), out.end(), rng);
        return out;
    };
    const auto lines = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int l = 0; l < lines; ++l) {
        if (examples) {
            const auto & lab = doc.labels[std::uniform_int_distribution<std::size_t>(0, doc.labels.size() - 1)(rng)];
            doc.examples.push_back({pick(doc.programs), lab.name});
        } else {
            (coin(rng) ? doc.inputs : doc.outputs).push_back(pick(doc.programs));
        }
    }
    return doc;
}

} // namespace testing_support
