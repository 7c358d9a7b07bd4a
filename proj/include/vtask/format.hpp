#pragma once

/*
 * The `.pvt` task language and every report the tools print.
 *
 *     # comments run to the end of the line
 *     states 5
 *     program f1 01111          # leftmost character is state 1
 *     label   red 11000
 *     input  f1                 # one statement per line; a bare `input` is the empty statement
 *     output f1 f3
 *     example f1,f2 -> red      # classification mode, exclusive with input/output
 *
 * Parsing collects every diagnostic in the document before failing.
 * Structured reports are JSON objects with sorted keys.
 */

#include "vtask/core_model.hpp"
#include "vtask/encoder.hpp"
#include "vtask/search.hpp"
#include "vtask/task_policy.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace vtask {

struct Diagnostic
{
    std::size_t line;
    std::size_t column;
    std::string message;

    bool operator==(const Diagnostic &) const = default;
    auto operator<=>(const Diagnostic &) const = default;
};

class ParseError : public Error
{
public:
    explicit ParseError(std::vector<Diagnostic> diagnostics)
        : Error(render(diagnostics)), diagnostics_(std::move(diagnostics))
    {
    }

    const std::vector<Diagnostic> & diagnostics() const { return diagnostics_; }

private:
    static std::string render(const std::vector<Diagnostic> & ds)
    {
        std::string out;
        for (const auto & d : ds)
            out += (out.empty() ? "" : "\n") + ("line " + std::to_string(d.line) + ", column " +
                                                 std::to_string(d.column) + ": " + d.message);
        return out;
    }

    std::vector<Diagnostic> diagnostics_;
};

inline bool is_valid_name(std::string_view name)
{
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
        return false;
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

namespace detail {

/// Checks a literal; on failure returns the 0-based offending offset and a message.
inline std::optional<std::pair<std::size_t, std::string>> literal_problem(std::string_view text, unsigned n_states)
{
    for (std::size_t i = 0; i < text.size(); ++i)
        if (text[i] != '0' && text[i] != '1')
            return std::pair{i, "program literal may only contain '0' and '1', found '" + std::string(1, text[i]) + "'"};
    if (text.size() != n_states)
        return std::pair{std::size_t{0}, "program literal '" + std::string(text) + "' has width " +
                                             std::to_string(text.size()) + ", expected " + std::to_string(n_states)};
    return std::nullopt;
}

inline Program literal_to_program(std::string_view text)
{
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < text.size(); ++i)
        if (text[i] == '1')
            bits |= std::uint64_t{1} << i;
    return {bits, static_cast<unsigned>(text.size())};
}

} // namespace detail

/// "01111" over 5 states is the program holding every state except state 1.
inline Program parse_program_literal(std::string_view text, StateSpace space)
{
    if (auto problem = detail::literal_problem(text, space.n_states()))
        throw ParseError({{1, problem->first + 1, problem->second}});
    return detail::literal_to_program(text);
}

struct TaskDocument
{
    unsigned n_states = 0;
    std::vector<NamedProgram> programs;
    std::vector<NamedProgram> labels;
    /// Statements as lists of program names, in file order.
    std::vector<std::vector<std::string>> inputs;
    std::vector<std::vector<std::string>> outputs;
    std::vector<Example> examples;

    bool classification_mode() const { return !examples.empty(); }
    bool has_task() const { return classification_mode() || !inputs.empty() || !outputs.empty(); }

    bool operator==(const TaskDocument &) const = default;
};

namespace detail {

struct Token
{
    std::string_view text;
    std::size_t column; // 1-based
};

inline std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        const std::size_t begin = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i > begin)
            out.push_back({line.substr(begin, i - begin), begin + 1});
    }
    return out;
}

struct NameRef
{
    std::string name;
    std::size_t line;
    std::size_t column;
};

class DocumentParser
{
public:
    TaskDocument parse(std::string_view text)
    {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            parse_line(line, line_no);
            if (end == text.size())
                break;
            pos = end + 1;
        }
        if (!states_line_)
            error(1, 1, "missing 'states <n>' declaration");
        resolve();
        if (!diagnostics_.empty()) {
            std::sort(diagnostics_.begin(), diagnostics_.end());
            throw ParseError(std::move(diagnostics_));
        }
        return std::move(doc_);
    }

private:
    void error(std::size_t line, std::size_t column, std::string message)
    {
        diagnostics_.push_back({line, column, std::move(message)});
    }

    void parse_line(std::string_view line, std::size_t line_no)
    {
        const auto tokens = tokenize(line);
        if (tokens.empty())
            return;
        const std::string_view keyword = tokens[0].text;

        if (!seen_declaration_ && keyword != "states")
            error(line_no, tokens[0].column, "expected 'states <n>' before any other declaration");
        seen_declaration_ = true;

        if (keyword == "states")
            parse_states(tokens, line_no);
        else if (keyword == "program")
            parse_program(tokens, line_no, doc_.programs);
        else if (keyword == "label")
            parse_program(tokens, line_no, doc_.labels);
        else if (keyword == "input")
            parse_statement(tokens, line_no, doc_.inputs);
        else if (keyword == "output")
            parse_statement(tokens, line_no, doc_.outputs);
        else if (keyword == "example")
            parse_example(line, tokens, line_no);
        else
            error(line_no, tokens[0].column, "unknown keyword '" + std::string(keyword) + "'");
    }

    void parse_states(const std::vector<Token> & tokens, std::size_t line_no)
    {
        if (states_line_) {
            error(line_no, tokens[0].column,
                  "'states' is already declared on line " + std::to_string(*states_line_));
            return;
        }
        states_line_ = line_no;
        if (tokens.size() != 2) {
            error(line_no, tokens[0].column, "expected 'states <n>'");
            return;
        }
        unsigned n = 0;
        const auto t = tokens[1].text;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
        if (ec != std::errc{} || ptr != t.data() + t.size() || n == 0 || n > StateSpace::max_states) {
            error(line_no, tokens[1].column,
                  "state count must be an integer from 1 to " + std::to_string(StateSpace::max_states));
            return;
        }
        doc_.n_states = n;
    }

    bool check_name(const Token & tok, std::size_t line_no)
    {
        if (is_valid_name(tok.text))
            return true;
        error(line_no, tok.column, "invalid name '" + std::string(tok.text) + "'");
        return false;
    }

    void parse_program(const std::vector<Token> & tokens, std::size_t line_no, std::vector<NamedProgram> & into)
    {
        const std::string kw(tokens[0].text);
        if (tokens.size() != 3) {
            error(line_no, tokens[0].column, "expected '" + kw + " <name> <bits>'");
            return;
        }
        bool ok = check_name(tokens[1], line_no);
        const std::string name(tokens[1].text);
        if (ok) {
            if (auto it = declared_.find(name); it != declared_.end()) {
                error(line_no, tokens[1].column,
                      "name '" + name + "' is already declared on line " + std::to_string(it->second));
                ok = false;
            }
        }
        const auto bits = tokens[2].text;
        if (doc_.n_states == 0) {
            // width cannot be checked without a valid states line; still check characters
            if (auto problem = literal_problem(bits, static_cast<unsigned>(bits.size())))
                error(line_no, tokens[2].column + problem->first, problem->second);
            return;
        }
        if (auto problem = literal_problem(bits, doc_.n_states)) {
            error(line_no, tokens[2].column + problem->first, problem->second);
            return;
        }
        const Program program = literal_to_program(bits);
        if (auto it = values_.find(std::string(bits)); it != values_.end()) {
            error(line_no, tokens[2].column,
                  "program " + std::string(bits) + " is already declared as '" + it->second + "'");
            return;
        }
        if (!ok)
            return;
        declared_.emplace(name, line_no);
        values_.emplace(std::string(bits), name);
        into.push_back({name, program});
    }

    void parse_statement(const std::vector<Token> & tokens, std::size_t line_no,
                         std::vector<std::vector<std::string>> & into)
    {
        note_mode(explicit_line_, line_no);
        std::vector<std::string> names;
        bool ok = true;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            if (!check_name(tokens[i], line_no)) {
                ok = false;
                continue;
            }
            std::string name(tokens[i].text);
            if (std::find(names.begin(), names.end(), name) != names.end()) {
                error(line_no, tokens[i].column, "name '" + name + "' is repeated in this statement");
                ok = false;
                continue;
            }
            refs_.push_back({name, line_no, tokens[i].column});
            names.push_back(std::move(name));
        }
        if (ok)
            into.push_back(std::move(names));
    }

    void parse_example(std::string_view line, const std::vector<Token> & tokens, std::size_t line_no)
    {
        note_mode(example_line_, line_no);
        const std::size_t body_begin = tokens[0].column - 1 + tokens[0].text.size();
        const std::string_view body = line.substr(body_begin);
        const std::size_t arrow = body.find("->");
        if (arrow == std::string_view::npos || body.find("->", arrow + 2) != std::string_view::npos) {
            error(line_no, tokens[0].column, "expected 'example <feature>[,<feature>...] -> <label>'");
            return;
        }
        Example ex;
        bool ok = true;
        auto field = [&](std::size_t offset, std::string_view piece) {
            // trim, returning the column of the first non-space character
            std::size_t b = 0;
            while (b < piece.size() && std::isspace(static_cast<unsigned char>(piece[b])))
                ++b;
            std::size_t e = piece.size();
            while (e > b && std::isspace(static_cast<unsigned char>(piece[e - 1])))
                --e;
            return Token{piece.substr(b, e - b), body_begin + offset + b + 1};
        };

        const std::string_view left = body.substr(0, arrow);
        const Token whole_left = field(0, left);
        if (!whole_left.text.empty()) {
            std::size_t start = 0;
            while (true) {
                const std::size_t comma = left.find(',', start);
                const std::size_t stop = comma == std::string_view::npos ? left.size() : comma;
                const Token feat = field(start, left.substr(start, stop - start));
                if (feat.text.empty()) {
                    error(line_no, feat.column, "empty feature name");
                    ok = false;
                } else if (check_name(feat, line_no)) {
                    std::string name(feat.text);
                    if (std::find(ex.features.begin(), ex.features.end(), name) != ex.features.end()) {
                        error(line_no, feat.column, "feature '" + name + "' is repeated in this example");
                        ok = false;
                    } else {
                        feature_refs_.push_back({name, line_no, feat.column});
                        ex.features.push_back(std::move(name));
                    }
                } else {
                    ok = false;
                }
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
        }

        const Token label = field(arrow + 2, body.substr(arrow + 2));
        if (label.text.empty()) {
            error(line_no, label.column, "missing label after '->'");
            ok = false;
        } else if (label.text.find(',') != std::string_view::npos || tokenize(label.text).size() > 1) {
            error(line_no, label.column, "an example takes exactly one label; multi-label examples are not supported");
            ok = false;
        } else if (check_name(label, line_no)) {
            label_refs_.push_back({std::string(label.text), line_no, label.column});
            ex.label = std::string(label.text);
        } else {
            ok = false;
        }
        if (ok)
            doc_.examples.push_back(std::move(ex));
    }

    void note_mode(std::optional<std::size_t> & first, std::size_t line_no)
    {
        if (!first)
            first = line_no;
    }

    void resolve()
    {
        if (explicit_line_ && example_line_) {
            const std::size_t later = std::max(*explicit_line_, *example_line_);
            error(later, 1,
                  "input/output lines cannot be combined with example lines (first " +
                      std::string(*explicit_line_ < *example_line_ ? "input/output on line " + std::to_string(*explicit_line_)
                                                                 : "example on line " + std::to_string(*example_line_)) +
                      ")");
        }
        auto in = [](const std::vector<NamedProgram> & list, const std::string & name) {
            return std::any_of(list.begin(), list.end(), [&](const auto & np) { return np.name == name; });
        };
        for (const auto & r : refs_)
            if (!in(doc_.programs, r.name) && !in(doc_.labels, r.name))
                error(r.line, r.column, "undeclared program '" + r.name + "'");
        for (const auto & r : feature_refs_)
            if (!in(doc_.programs, r.name))
                error(r.line, r.column,
                      in(doc_.labels, r.name) ? "'" + r.name + "' is a label and cannot be used as a feature"
                                              : "undeclared program '" + r.name + "'");
        for (const auto & r : label_refs_)
            if (!in(doc_.labels, r.name))
                error(r.line, r.column,
                      in(doc_.programs, r.name) ? "'" + r.name + "' is a program, not a label"
                                                : "undeclared label '" + r.name + "'");
    }

    TaskDocument doc_;
    std::vector<Diagnostic> diagnostics_;
    std::optional<std::size_t> states_line_;
    bool seen_declaration_ = false;
    std::map<std::string, std::size_t> declared_;
    std::map<std::string, std::string> values_;
    std::vector<NameRef> refs_;
    std::vector<NameRef> feature_refs_;
    std::vector<NameRef> label_refs_;
    std::optional<std::size_t> explicit_line_;
    std::optional<std::size_t> example_line_;
};

} // namespace detail

inline TaskDocument parse_task_file(std::string_view text)
{
    return detail::DocumentParser{}.parse(text);
}

inline std::string serialize_document(const TaskDocument & doc)
{
    std::string out = "states " + std::to_string(doc.n_states) + "\n";
    for (const auto & p : doc.programs)
        out += "program " + p.name + " " + p.program.literal() + "\n";
    for (const auto & p : doc.labels)
        out += "label " + p.name + " " + p.program.literal() + "\n";
    auto statement_line = [&](const char * kw, const std::vector<std::string> & names) {
        out += kw;
        for (const auto & n : names)
            out += " " + n;
        out += "\n";
    };
    for (const auto & s : doc.inputs)
        statement_line("input", s);
    for (const auto & s : doc.outputs)
        statement_line("output", s);
    for (const auto & ex : doc.examples) {
        out += "example";
        for (std::size_t i = 0; i < ex.features.size(); ++i)
            out += (i ? "," : " ") + ex.features[i];
        out += " -> " + ex.label + "\n";
    }
    return out;
}

/// A document turned into a language, program names and (when present) a task.
struct LoadedDocument
{
    std::shared_ptr<const Language> language;
    /// Program names by vocabulary index.
    std::vector<std::string> names;
    /// Vocabulary indices of label programs.
    Statement labels;
    std::optional<Task> task;
};

inline ClassificationSpec classification_spec(const TaskDocument & doc)
{
    return {StateSpace(doc.n_states), doc.programs, doc.labels, doc.examples};
}

inline LoadedDocument load_document(const TaskDocument & doc)
{
    if (doc.classification_mode()) {
        EncodedTask enc = encode_classification(classification_spec(doc));
        return {enc.language, enc.names, enc.labels, std::move(enc.task)};
    }
    std::vector<Program> programs;
    for (const auto & p : doc.programs)
        programs.push_back(p.program);
    for (const auto & p : doc.labels)
        programs.push_back(p.program);
    Vocabulary vocab(StateSpace(doc.n_states), std::move(programs));

    LoadedDocument out;
    out.names.resize(vocab.size());
    for (const auto & p : doc.programs)
        out.names[*vocab.index_of(p.program)] = p.name;
    for (const auto & p : doc.labels) {
        const auto idx = static_cast<unsigned>(*vocab.index_of(p.program));
        out.names[idx] = p.name;
        out.labels = out.labels.with(idx);
    }
    out.language = std::make_shared<const Language>(build_language(vocab));

    auto to_statement = [&](const std::vector<std::string> & names) {
        Statement s;
        for (const auto & n : names) {
            auto it = std::find(out.names.begin(), out.names.end(), n);
            if (it == out.names.end())
                throw MalformedInputError("undeclared program '" + n + "'");
            s = s.with(static_cast<unsigned>(it - out.names.begin()));
        }
        return s;
    };
    if (doc.has_task()) {
        std::vector<Statement> inputs;
        std::vector<Statement> outputs;
        for (const auto & s : doc.inputs)
            inputs.push_back(to_statement(s));
        for (const auto & s : doc.outputs)
            outputs.push_back(to_statement(s));
        out.task = validate_task(inputs, outputs, out.language);
    }
    return out;
}

/// Resolves a list of program names against a loaded document.
inline Statement resolve_names(const LoadedDocument & loaded, const std::vector<std::string> & names)
{
    Statement s;
    for (const auto & n : names) {
        auto it = std::find(loaded.names.begin(), loaded.names.end(), n);
        if (it == loaded.names.end())
            throw MalformedInputError("unknown program name '" + n + "'");
        s = s.with(static_cast<unsigned>(it - loaded.names.begin()));
    }
    return s;
}

/// An explicit-mode document describing `task`.
inline TaskDocument to_document(const Task & task, const std::vector<std::string> & names, Statement labels = {})
{
    const auto & vocab = task.language().vocabulary();
    TaskDocument doc;
    doc.n_states = vocab.space().n_states();
    for (unsigned i = 0; i < vocab.size(); ++i)
        (labels.contains(i) ? doc.labels : doc.programs).push_back({names[i], vocab[i]});
    auto names_of = [&](Statement s) {
        std::vector<std::string> out;
        for_each_bit(s.mask(), [&](unsigned i) { out.push_back(names[i]); });
        return out;
    };
    for (auto s : task.input_statements())
        doc.inputs.push_back(names_of(s));
    for (auto s : task.output_statements())
        doc.outputs.push_back(names_of(s));
    return doc;
}

// ---------------------------------------------------------------------------
// reports

enum class ReportMode
{
    text,
    structured,
};

/// Program literals, for tasks that carry no names.
inline std::vector<std::string> literal_names(const Vocabulary & vocab)
{
    std::vector<std::string> out;
    for (const auto & p : vocab.programs())
        out.push_back(p.literal());
    return out;
}

inline std::vector<std::string> statement_names(Statement s, const std::vector<std::string> & names)
{
    std::vector<std::string> out;
    for_each_bit(s.mask(), [&](unsigned i) { out.push_back(names.at(i)); });
    return out;
}

inline std::string render_statement(Statement s, const std::vector<std::string> & names)
{
    std::string out = "{";
    const auto parts = statement_names(s, names);
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? ", " : "") + parts[i];
    return out + "}";
}

inline std::string render_statements(const std::vector<Statement> & ss, const std::vector<std::string> & names)
{
    std::string out;
    for (std::size_t i = 0; i < ss.size(); ++i)
        out += (i ? ", " : "") + render_statement(ss[i], names);
    return out;
}

namespace detail {

inline nlohmann::json statements_tree(const std::vector<Statement> & ss, const std::vector<std::string> & names)
{
    nlohmann::json arr = nlohmann::json::array();
    for (auto s : ss)
        arr.push_back(statement_names(s, names));
    return arr;
}

inline std::string dump(const nlohmann::json & tree)
{
    return tree.dump(2) + "\n";
}

inline std::string yes_no(bool b)
{
    return b ? "yes" : "no";
}

} // namespace detail

inline std::string render_language(const Language & lang, const std::vector<std::string> & names, ReportMode mode)
{
    const std::vector<Statement> all(lang.statements().begin(), lang.statements().end());
    if (mode == ReportMode::structured) {
        nlohmann::json tree;
        tree["size"] = lang.size();
        tree["statements"] = detail::statements_tree(all, names);
        return detail::dump(tree);
    }
    std::string out = "language: " + std::to_string(lang.size()) + " statements\n";
    for (auto s : all)
        out += "  " + render_statement(s, names) + "\n";
    return out;
}

inline nlohmann::json task_tree(const Task & task, const std::vector<std::string> & names)
{
    nlohmann::json tree;
    tree["inputs"] = detail::statements_tree(task.input_statements(), names);
    tree["outputs"] = detail::statements_tree(task.output_statements(), names);
    tree["input_extension_size"] = task.input_extension().size();
    tree["language_size"] = task.language().size();
    return tree;
}

/// Verdict for a single policy against a task.
inline std::string render_check(const Policy & pi, const Task & task, const std::vector<std::string> & names,
                                ReportMode mode)
{
    const auto & lang = task.language();
    const auto sel = lang.to_statements(selection(pi, task));
    const bool correct = is_correct_policy(pi, task);
    if (mode == ReportMode::structured) {
        nlohmann::json tree;
        tree["policy"] = statement_names(pi.statement, names);
        tree["selection"] = detail::statements_tree(sel, names);
        tree["selection_size"] = sel.size();
        tree["outputs"] = detail::statements_tree(task.output_statements(), names);
        tree["correct"] = correct;
        return detail::dump(tree);
    }
    std::string out;
    out += "policy: " + render_statement(pi.statement, names) + "\n";
    out += "selected (" + std::to_string(sel.size()) + "): " + render_statements(sel, names) + "\n";
    out += "outputs (" + std::to_string(task.outputs().size()) + "): " + render_statements(task.output_statements(), names) +
           "\n";
    out += std::string("verdict: ") + (correct ? "CORRECT" : "INCORRECT") + "\n";
    return out;
}

inline nlohmann::json report_tree(const PolicySearchResult & r, const std::vector<std::string> & names)
{
    nlohmann::json tree;
    tree["task"] = task_tree(r.task, names);
    tree["mode"] = std::string(to_string(r.mode));
    tree["length_bound"] = r.length_bound;
    tree["checked"] = r.checked;
    nlohmann::json correct = nlohmann::json::array();
    for (const auto & p : r.correct)
        correct.push_back(statement_names(p.statement, names));
    tree["correct"] = correct;
    tree["correct_count"] = r.correct.size();
    nlohmann::json counts = nlohmann::json::array();
    for (const auto & [p, n] : r.selection_counts)
        counts.push_back({{"policy", statement_names(p.statement, names)}, {"selected", n}});
    tree["selection_counts"] = counts;
    return tree;
}

inline nlohmann::json report_tree(const SetPolicySearchResult & r, const std::vector<std::string> & names)
{
    nlohmann::json tree;
    tree["cap"] = r.cap;
    tree["checked"] = r.checked;
    nlohmann::json correct = nlohmann::json::array();
    for (const auto & p : r.correct)
        correct.push_back(detail::statements_tree({p.statements().begin(), p.statements().end()}, names));
    tree["correct"] = correct;
    tree["correct_count"] = r.correct.size();
    return tree;
}

inline std::string serialize_report(const PolicySearchResult & r, const std::vector<std::string> & names,
                                    ReportMode mode)
{
    if (mode == ReportMode::structured)
        return detail::dump(report_tree(r, names));
    std::string out;
    out += "task: " + std::to_string(r.task.inputs().size()) + " inputs, " + std::to_string(r.task.outputs().size()) +
           " outputs, |E_I| = " + std::to_string(r.task.input_extension().size()) +
           ", |L_v| = " + std::to_string(r.task.language().size()) + "\n";
    out += "mode: " + std::string(to_string(r.mode)) + "\n";
    out += "length bound: " + std::to_string(r.length_bound) + "\n";
    out += "checked: " + std::to_string(r.checked) + "\n";
    out += "correct policies: " + std::to_string(r.correct.size()) + " / " + std::to_string(r.checked) + " checked\n";
    for (const auto & p : r.correct)
        out += "  correct: " + render_statement(p.statement, names) + "\n";
    out += "selection counts:\n";
    for (const auto & [p, n] : r.selection_counts)
        out += "  " + render_statement(p.statement, names) + " -> " + std::to_string(n) + "\n";
    return out;
}

inline std::string serialize_report(const SetPolicySearchResult & r, const std::vector<std::string> & names,
                                    ReportMode mode)
{
    if (mode == ReportMode::structured)
        return detail::dump(report_tree(r, names));
    std::string out;
    out += "set policies (size <= " + std::to_string(r.cap) + "): " + std::to_string(r.correct.size()) + " correct / " +
           std::to_string(r.checked) + " checked\n";
    for (const auto & p : r.correct)
        out += "  correct: {" + render_statements({p.statements().begin(), p.statements().end()}, names) + "}\n";
    return out;
}

inline nlohmann::json snapshot_tree(const TaskSnapshot & t)
{
    std::vector<std::string> names;
    for (const auto & p : t.programs)
        names.push_back(p.literal());
    nlohmann::json tree;
    tree["programs"] = names;
    tree["inputs"] = detail::statements_tree(t.inputs, names);
    tree["outputs"] = detail::statements_tree(t.outputs, names);
    return tree;
}

inline std::string render_snapshot(const TaskSnapshot & t)
{
    std::vector<std::string> names;
    for (const auto & p : t.programs)
        names.push_back(p.literal());
    std::string out = "programs [";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += (i ? ", " : "") + names[i];
    return out + "] I = {" + render_statements(t.inputs, names) + "} O = {" + render_statements(t.outputs, names) + "}";
}

/// Timing figures vary between runs and are left out unless asked for.
inline std::string serialize_report(const CensusReport & r, ReportMode mode, bool include_timing = false)
{
    if (mode == ReportMode::structured) {
        nlohmann::json tree;
        tree["spec"] = {{"n_states", r.spec.n_states},
                        {"vocab_size", r.spec.vocab_size},
                        {"dedup", r.spec.dedup},
                        {"classification_only", r.spec.classification_only}};
        tree["totals"] = {{"vocabularies", r.vocabularies},
                          {"enumerated", r.tasks_enumerated},
                          {"valid", r.tasks_valid},
                          {"solvable", r.tasks_solvable},
                          {"unsolvable", r.tasks_unsolvable}};
        nlohmann::json ex = nlohmann::json::array();
        for (const auto & t : r.exemplars)
            ex.push_back(snapshot_tree(t));
        tree["exemplars"] = ex;
        tree["truncated"] = r.truncated;
        if (include_timing)
            tree["timing"] = {{"seconds", r.seconds}, {"tasks_per_second", r.tasks_per_second}};
        return detail::dump(tree);
    }
    std::string out;
    out += "census: n_states=" + std::to_string(r.spec.n_states) + " vocab_size=" + std::to_string(r.spec.vocab_size) +
           " dedup=" + detail::yes_no(r.spec.dedup) +
           " classification_only=" + detail::yes_no(r.spec.classification_only) + "\n";
    out += "vocabularies: " + std::to_string(r.vocabularies) + "\n";
    out += "tasks enumerated: " + std::to_string(r.tasks_enumerated) + "\n";
    out += "tasks valid: " + std::to_string(r.tasks_valid) + "\n";
    out += "tasks solvable: " + std::to_string(r.tasks_solvable) + "\n";
    out += "tasks unsolvable: " + std::to_string(r.tasks_unsolvable) + "\n";
    out += "truncated: " + detail::yes_no(r.truncated) + "\n";
    if (!r.exemplars.empty()) {
        out += "unsolvable exemplars:\n";
        for (const auto & t : r.exemplars)
            out += "  " + render_snapshot(t) + "\n";
    }
    if (include_timing) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "seconds: %.6f\nthroughput: %.0f valid tasks/s\n", r.seconds, r.tasks_per_second);
        out += buf;
    }
    return out;
}

/// Named pass/fail checks, such as the reproduction run.
struct CheckResult
{
    std::string name;
    bool passed;
    std::string detail;
};

struct VerificationReport
{
    std::vector<CheckResult> checks;

    bool all_passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto & c) { return c.passed; });
    }
};

inline std::string serialize_report(const VerificationReport & r, ReportMode mode)
{
    const auto failed =
        static_cast<std::size_t>(std::count_if(r.checks.begin(), r.checks.end(), [](const auto & c) { return !c.passed; }));
    if (mode == ReportMode::structured) {
        nlohmann::json tree;
        nlohmann::json checks = nlohmann::json::array();
        for (const auto & c : r.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        tree["checks"] = checks;
        tree["failed"] = failed;
        tree["passed"] = r.checks.size() - failed;
        return detail::dump(tree);
    }
    std::string out;
    for (const auto & c : r.checks)
        out += std::string(c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
    out += std::to_string(r.checks.size() - failed) + "/" + std::to_string(r.checks.size()) + " checks passed\n";
    return out;
}

} // namespace vtask
