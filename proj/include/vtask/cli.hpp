#pragma once

// Command-line front end. Exit status: 0 success or affirmative verdict,
// 1 negative verdict, 2 usage or input error, 3 capacity error.

#include "vtask/format.hpp"
#include "vtask/paper.hpp"
#include "vtask/vtask.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace vtask::cli {

enum ExitCode : int
{
    exit_ok = 0,
    exit_negative = 1,
    exit_usage = 2,
    exit_capacity = 3,
};

namespace detail {

inline std::string read_file(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw MalformedInputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline LoadedDocument load(const std::string & path)
{
    return load_document(parse_task_file(read_file(path)));
}

inline const Task & require_task(const LoadedDocument & doc, const std::string & path)
{
    if (!doc.task)
        throw MalformedInputError("'" + path + "' declares no task (no input/output or example lines)");
    return *doc.task;
}

} // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Decide policy correctness for v-tasks by exhaustive enumeration", "vtask"};
    app.require_subcommand(1);

    bool structured = false;
    auto add_structured = [&](CLI::App * cmd) {
        cmd->add_flag("--structured,--json-like", structured, "Print a key-sorted JSON report");
    };

    std::string file;
    std::string other_file;

    auto * lang_cmd = app.add_subcommand("lang", "List every statement of the file's language");
    lang_cmd->add_option("file", file, "Task file (.pvt)")->required();
    add_structured(lang_cmd);

    std::vector<std::string> policy_names;
    bool empty_policy = false;
    auto * check_cmd = app.add_subcommand("check", "Decide whether one policy is correct for the file's task");
    check_cmd->add_option("file", file, "Task file (.pvt)")->required();
    auto * policy_opt =
        check_cmd->add_option("--policy", policy_names, "Program names of the policy statement")->delimiter(',');
    auto * empty_opt = check_cmd->add_flag("--empty", empty_policy, "Check the empty policy");
    policy_opt->excludes(empty_opt);
    add_structured(check_cmd);

    std::string mode_name = "exhaustive";
    std::optional<std::string> set_policies;
    bool invert_exit = false;
    auto * search_cmd = app.add_subcommand("search", "Search every policy of the file's task");
    search_cmd->add_option("file", file, "Task file (.pvt)")->required();
    search_cmd->add_option("--mode", mode_name, "exhaustive or pruned")
        ->check(CLI::IsMember({"exhaustive", "pruned"}));
    search_cmd->add_option("--set-policies", set_policies, "Also search set policies: 'all' or a maximum size");
    search_cmd->add_flag("--invert-exit", invert_exit, "Exit 0 when no correct policy exists");
    add_structured(search_cmd);

    SearchSpec spec;
    std::optional<double> budget_seconds;
    std::optional<std::uint64_t> max_tasks;
    unsigned workers = 1;
    bool timing = false;
    auto * census_cmd = app.add_subcommand("census", "Count solvable and unsolvable tasks over small state spaces");
    census_cmd->add_option("--states", spec.n_states, "Number of states")->required();
    census_cmd->add_option("--vocab-size", spec.vocab_size, "Programs per vocabulary")->required();
    census_cmd->add_flag("--dedup", spec.dedup, "One vocabulary per state-permutation orbit");
    census_cmd->add_flag("--classification", spec.classification_only, "Only classification-shaped tasks");
    census_cmd->add_option("--max-tasks", max_tasks, "Stop after this many valid tasks");
    census_cmd->add_option("--budget", budget_seconds, "Time budget in seconds")->check(CLI::NonNegativeNumber);
    census_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    census_cmd->add_option("--exemplars", spec.exemplar_limit, "Unsolvable exemplars to report");
    census_cmd->add_flag("--timing", timing, "Include wall-clock figures");
    add_structured(census_cmd);

    auto * encode_cmd = app.add_subcommand("encode", "Encode a classification file as an explicit task");
    encode_cmd->add_option("file", file, "Task file with example lines")->required();
    encode_cmd->add_option("--compare", other_file, "Report whether the encoded task is isomorphic to this file's task");
    add_structured(encode_cmd);

    auto * verify_cmd = app.add_subcommand("verify-paper", "Reproduce the counterexample and its counted quantities");
    add_structured(verify_cmd);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError & e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    const ReportMode mode = structured ? ReportMode::structured : ReportMode::text;
    try {
        if (*lang_cmd) {
            const auto doc = detail::load(file);
            out << render_language(*doc.language, doc.names, mode);
            return exit_ok;
        }

        if (*check_cmd) {
            if (policy_names.empty() && !empty_policy)
                throw CLI::RequiredError("check needs --policy <names> or --empty");
            const auto doc = detail::load(file);
            const Task & task = detail::require_task(doc, file);
            const Policy pi{resolve_names(doc, policy_names)};
            if (!doc.language->contains(pi.statement))
                throw DomainError("policy " + render_statement(pi.statement, doc.names) +
                                  " is not a statement: its programs share no state");
            out << render_check(pi, task, doc.names, mode);
            return is_correct_policy(pi, task) ? exit_ok : exit_negative;
        }

        if (*search_cmd) {
            const auto doc = detail::load(file);
            const Task & task = detail::require_task(doc, file);
            const auto result =
                find_correct_policies(task, mode_name == "pruned" ? SearchMode::pruned : SearchMode::exhaustive);
            bool found = !result.correct.empty();
            if (set_policies) {
                std::optional<std::size_t> cap;
                if (*set_policies != "all") {
                    std::size_t parsed = 0;
                    std::istringstream ss(*set_policies);
                    if (!(ss >> parsed) || !ss.eof())
                        throw CLI::ValidationError("--set-policies", "expected 'all' or a nonnegative integer");
                    cap = parsed;
                }
                const auto sets = find_correct_set_policies(task, cap);
                found = found || !sets.correct.empty();
                if (mode == ReportMode::structured) {
                    nlohmann::json tree;
                    tree["policies"] = report_tree(result, doc.names);
                    tree["set_policies"] = report_tree(sets, doc.names);
                    out << tree.dump(2) << "\n";
                } else {
                    out << serialize_report(result, doc.names, mode) << serialize_report(sets, doc.names, mode);
                }
            } else {
                out << serialize_report(result, doc.names, mode);
            }
            return found != invert_exit ? exit_ok : exit_negative;
        }

        if (*census_cmd) {
            spec.max_tasks = max_tasks;
            if (budget_seconds)
                spec.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(*budget_seconds * 1000.0));
            const auto report = census(spec, workers);
            out << serialize_report(report, mode, timing);
            return exit_ok;
        }

        if (*encode_cmd) {
            const auto parsed = parse_task_file(detail::read_file(file));
            if (!parsed.classification_mode())
                throw MalformedInputError("'" + file + "' has no example lines to encode");
            const auto encoded = encode_classification(classification_spec(parsed));
            if (!other_file.empty()) {
                const auto other = detail::load(other_file);
                const bool iso = verify_isomorphism(encoded.task, detail::require_task(other, other_file));
                if (mode == ReportMode::structured)
                    out << nlohmann::json{{"isomorphic", iso}}.dump(2) << "\n";
                else
                    out << "isomorphic: " << (iso ? "yes" : "no") << "\n";
                return iso ? exit_ok : exit_negative;
            }
            if (mode == ReportMode::structured)
                out << task_tree(encoded.task, encoded.names).dump(2) << "\n";
            else
                out << serialize_document(to_document(encoded.task, encoded.names, encoded.labels));
            return exit_ok;
        }

        if (*verify_cmd) {
            const auto report = paper::verify_paper();
            out << serialize_report(report, mode);
            return report.all_passed() ? exit_ok : exit_negative;
        }
    } catch (const CLI::Error & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const CapacityError & e) {
        err << "capacity error: " << e.what() << "\n";
        return exit_capacity;
    } catch (const Error & e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace vtask::cli
