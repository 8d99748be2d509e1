#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rigidcoh/cli/document.hpp"

namespace rigidcoh::cli {

enum ExitCode { Success = 0, TaskFailure = 1, InputError = 2 };

inline Json error_json(const Error& e) {
    Json err{{"code", std::string(code_name(e.code()))}, {"message", e.what()}};
    if (auto* d = dynamic_cast<const DocumentError*>(&e)) err["location"] = d->location();
    return Json{{"error", err}};
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// The rigidcoh command line; `corpus` is the text emitted by `examples`.
inline int main_entry(int argc, const char* const* argv, std::string_view corpus, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact finite-level Galois cohomology of tori and reductive groups"};
    app.require_subcommand(1);
    std::string file, format = "json";
    std::size_t jobs = 1;

    auto* run_cmd = app.add_subcommand("run", "Evaluate every task of a document");
    run_cmd->add_option("file", file, "Task document (JSON)")->required();
    run_cmd->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::Range(1, 256));
    run_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    auto* check_cmd = app.add_subcommand("check", "Parse and validate a document without running it");
    check_cmd->add_option("file", file, "Task document (JSON)")->required();
    app.add_subcommand("examples", "Print the bundled worked-examples document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        int rc = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return rc == 0 ? Success : InputError;
    }

    if (app.got_subcommand("examples")) {
        out << corpus;
        return Success;
    }
    try {
        TaskDocument doc = parse_document(read_file(file));
        if (app.got_subcommand("check")) {
            out << serialize(Json{{"tasks", doc.tasks.size()}, {"valid", true}});
            return Success;
        }
        Json results = run(doc, jobs);
        out << (format == "text" ? render_text(results) : serialize(results));
        return all_ok(results) ? Success : TaskFailure;
    } catch (const Error& e) {
        err << serialize(error_json(e));
        return InputError;
    }
}

} // namespace rigidcoh::cli
