#pragma once

#include <algorithm>
#include <atomic>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rigidcoh/cli/operations.hpp"

namespace rigidcoh::cli {

struct Task {
    const OpSpec* op = nullptr;
    Json params;
};

/// A validated document. `source` is the canonical JSON form; `declarations`
/// holds the built objects it describes.
struct TaskDocument {
    Json source;
    Declarations declarations;
    std::vector<Task> tasks;

    friend bool operator==(const TaskDocument& a, const TaskDocument& b) { return a.source == b.source; }
};

namespace detail {

inline std::string line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else ++col;
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

/// Parses JSON text, rejecting duplicate keys (nlohmann would keep the last one).
inline Json parse_json(std::string_view text) {
    std::vector<std::set<std::string>> keys;
    std::string duplicate;
    auto cb = [&](int, Json::parse_event_t ev, Json& parsed) {
        if (ev == Json::parse_event_t::object_start) keys.emplace_back();
        else if (ev == Json::parse_event_t::object_end) keys.pop_back();
        else if (ev == Json::parse_event_t::key && !keys.back().insert(parsed.get<std::string>()).second &&
                 duplicate.empty())
            duplicate = parsed.get<std::string>();
        return true;
    };
    Json j;
    try {
        j = Json::parse(text.begin(), text.end(), cb);
    } catch (const Json::parse_error& e) {
        std::string msg = e.what();
        if (auto k = msg.find("parse error"); k != std::string::npos) msg = msg.substr(k);
        throw DocumentError(ErrorCode::ParseError, line_column(text, e.byte == 0 ? 0 : e.byte - 1), msg);
    }
    if (!duplicate.empty())
        throw DocumentError(ErrorCode::SchemaError, "/", "duplicate key '" + duplicate + "'");
    return j;
}

inline Task build_task(const Declarations& d, const Json& j, const std::string& path) {
    expect_object(j, path);
    const std::string name = read_string(field(j, path, "op"), child(path, "op"));
    const OpSpec* op = find_operation(name);
    if (!op) schema_error(child(path, "op"), "unknown operation '" + name + "'");
    std::set<std::string> allowed{"op", "label"};
    for (const auto& p : op->params) allowed.insert(p.key);
    only_keys(j, path, allowed);
    if (j.contains("label")) read_string(j.at("label"), child(path, "label"));
    for (const auto& p : op->params) {
        if (!j.contains(p.key)) {
            if (p.required) schema_error(child(path, p.key), "missing required parameter of " + name);
            continue;
        }
        check_param(d, p, j.at(p.key), child(path, p.key));
    }
    return Task{op, j};
}

} // namespace detail

inline TaskDocument parse_document(std::string_view text) {
    TaskDocument doc;
    doc.source = detail::parse_json(text);
    std::set<std::string> allowed{"description", "tasks"};
    for (const auto& s : declaration_sections()) allowed.insert(s);
    only_keys(doc.source, "", allowed);
    if (doc.source.contains("description")) read_string(doc.source.at("description"), "/description");
    doc.declarations = build_declarations(doc.source);
    const Json& tasks = field(doc.source, "", "tasks");
    if (!tasks.is_array()) schema_error("/tasks", "expected an array of tasks");
    for (std::size_t i = 0; i < tasks.size(); ++i)
        doc.tasks.push_back(detail::build_task(doc.declarations, tasks[i], child("/tasks", i)));
    return doc;
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string serialize(const Json& j) { return j.dump(2) + "\n"; }
inline std::string serialize(const TaskDocument& doc) { return serialize(doc.source); }

inline Json run_task(const TaskDocument& doc, std::size_t index) {
    const Task& t = doc.tasks[index];
    Json r{{"task", index}, {"op", t.op->name}};
    if (t.params.contains("label")) r["label"] = t.params.at("label");
    try {
        r["payload"] = t.op->run(doc.declarations, t.params);
        r["status"] = "ok";
    } catch (const Error& e) {
        r["status"] = "error";
        r["error"] = Json{{"code", std::string(code_name(e.code()))}, {"message", e.what()}};
    }
    return r;
}

/// Runs every task on up to `jobs` threads; results are assembled in task order.
inline Json run(const TaskDocument& doc, std::size_t jobs = 1) {
    const std::size_t n = doc.tasks.size();
    std::vector<Json> results(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) results[i] = run_task(doc, i);
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t k = 1; k < std::min(std::max<std::size_t>(jobs, 1), n); ++k) pool.emplace_back(worker);
        worker();
    }
    std::size_t failed = 0;
    Json list = Json::array();
    for (auto& r : results) {
        if (r.at("status") != "ok") ++failed;
        list.push_back(std::move(r));
    }
    return Json{{"results", std::move(list)}, {"summary", Json{{"tasks", n}, {"ok", n - failed}, {"failed", failed}}}};
}

inline bool all_ok(const Json& results) { return results.at("summary").at("failed").get<std::size_t>() == 0; }

} // namespace rigidcoh::cli
