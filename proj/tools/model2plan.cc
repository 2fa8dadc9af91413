// Command-line driver. Talks to the toolchain only through the C API.

#include "model2plan/model2plan.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

using namespace std;

namespace {
enum Exit { ExitOk = 0, ExitInput = 1, ExitValidation = 2, ExitEmbedded = 3, ExitFindings = 4 };

template<typename T, void (*Free)(T *)>
struct Deleter {
    void operator()(T *p) const { Free(p); }
};
using Model = unique_ptr<m2p_model, Deleter<m2p_model, m2p_model_free>>;
using Diagnostics = unique_ptr<m2p_diagnostics, Deleter<m2p_diagnostics, m2p_diagnostics_free>>;
using Generation = unique_ptr<m2p_generation, Deleter<m2p_generation, m2p_generation_free>>;
using Task = unique_ptr<m2p_task, Deleter<m2p_task, m2p_task_free>>;
using PlanHandle = unique_ptr<m2p_plan, Deleter<m2p_plan, m2p_plan_free>>;

string take(char *text) {
    string out = text ? text : "";
    m2p_string_free(text);
    return out;
}

bool json_output = false;

void print_diagnostics(const m2p_diagnostics *list) {
    if (json_output)
        cerr << take(m2p_diagnostics_format(list, 1));
    else
        cerr << take(m2p_diagnostics_format(list, 0));
}

// Reports a failed call: its diagnostics if any, else the last error message.
int failure(m2p_status status, const m2p_diagnostics *list, int code) {
    if (m2p_diagnostics_count(list) > 0)
        print_diagnostics(list);
    else if (json_output)
        cerr << "[]\n";
    if (m2p_diagnostics_count(list) == 0 || status == M2P_E_ARGUMENT)
        cerr << "model2plan: " << m2p_last_error() << "\n";
    return code;
}

int input_code(m2p_status status) {
    switch (status) {
    case M2P_E_VALIDATION:
    case M2P_E_GENERATION:
        return ExitValidation;
    case M2P_E_TASK:
        return ExitFindings;
    default:
        return ExitInput;
    }
}

bool write_file(const filesystem::path &path, const string &text) {
    ofstream out(path, ios::binary);
    out << text;
    out.close();
    if (!out) {
        cerr << "model2plan: cannot write " << path.string() << "\n";
        return false;
    }
    return true;
}

Model load_model(const string &path, int &code) {
    m2p_model *model = nullptr;
    m2p_diagnostics *raw = nullptr;
    m2p_status status = m2p_model_load(path.c_str(), &model, &raw);
    Diagnostics diagnostics(raw);
    if (status != M2P_OK)
        code = failure(status, diagnostics.get(), ExitInput);
    return Model(model);
}

Task load_task(const string &domain, const string &problem, int &code) {
    m2p_task *task = nullptr;
    m2p_diagnostics *raw = nullptr;
    m2p_status status = m2p_task_load(domain.c_str(), problem.c_str(), &task, &raw);
    Diagnostics diagnostics(raw);
    if (status != M2P_OK)
        code = failure(status, diagnostics.get(), ExitInput);
    return Task(task);
}

int cmd_validate(const string &model_path, const string &scope) {
    int code = ExitOk;
    Model model = load_model(model_path, code);
    if (!model)
        return code;
    m2p_diagnostics *raw = nullptr;
    m2p_status status = m2p_model_validate(model.get(), scope.empty() ? nullptr : scope.c_str(), &raw);
    Diagnostics diagnostics(raw);
    if (status != M2P_OK)
        return failure(status, diagnostics.get(), input_code(status));
    print_diagnostics(diagnostics.get());
    size_t errors = m2p_diagnostics_error_count(diagnostics.get());
    size_t warnings = m2p_diagnostics_count(diagnostics.get()) - errors;
    cout << errors << " error(s), " << warnings << " warning(s)\n";
    return errors ? ExitValidation : ExitOk;
}

struct GenArgs {
    string model;
    string out;
    string scope;
    string problem;
    bool trace = false;
    bool no_header = false;
};

int cmd_gen(const GenArgs &args) {
    int code = ExitOk;
    Model model = load_model(args.model, code);
    if (!model)
        return code;
    m2p_gen_options options;
    m2p_gen_options_init(&options);
    options.scope_id = args.scope.empty() ? nullptr : args.scope.c_str();
    options.problem = args.problem.empty() ? nullptr : args.problem.c_str();
    options.trace = args.trace;
    options.header = !args.no_header;
    string file_name = filesystem::path(args.model).filename().string();
    options.model_file = file_name.c_str();

    m2p_generation *raw_generation = nullptr;
    m2p_diagnostics *raw = nullptr;
    m2p_status status = m2p_generate(model.get(), &options, &raw_generation, &raw);
    Diagnostics diagnostics(raw);
    Generation generation(raw_generation);
    if (status != M2P_OK)
        return failure(status, diagnostics.get(), input_code(status));
    if (m2p_diagnostics_count(diagnostics.get()) > 0)
        print_diagnostics(diagnostics.get());

    filesystem::path dir(args.out);
    error_code ec;
    filesystem::create_directories(dir, ec);
    if (ec) {
        cerr << "model2plan: cannot create " << dir.string() << ": " << ec.message() << "\n";
        return ExitInput;
    }
    if (!write_file(dir / "domain.pddl", m2p_generation_domain_text(generation.get())))
        return ExitInput;
    for (size_t i = 0; i < m2p_generation_problem_count(generation.get()); ++i) {
        string name = string("problem_") + m2p_generation_problem_name(generation.get(), i) + ".pddl";
        if (!write_file(dir / name, m2p_generation_problem_text(generation.get(), i)))
            return ExitInput;
    }
    cout << m2p_generation_stats(generation.get()) << "\n";
    size_t embedded = m2p_generation_embedded_error_count(generation.get());
    if (embedded) {
        cerr << "model2plan: " << embedded << " embedded error(s) in the generated files\n";
        return ExitEmbedded;
    }
    return ExitOk;
}

int cmd_check(const string &domain, const string &problem) {
    int code = ExitOk;
    Task task = load_task(domain, problem, code);
    if (!task)
        return code;
    m2p_diagnostics *raw = nullptr;
    m2p_status status = m2p_task_check(task.get(), &raw);
    Diagnostics findings(raw);
    if (status != M2P_OK)
        return failure(status, findings.get(), ExitInput);
    size_t count = m2p_diagnostics_count(findings.get());
    if (count || json_output)
        print_diagnostics(findings.get());
    cout << count << " finding(s)\n";
    return count ? ExitFindings : ExitOk;
}

int cmd_solve(const string &domain, const string &problem, const string &heuristic, const string &out,
              uint64_t max_expansions) {
    m2p_planner_config config;
    m2p_planner_config_init(&config);
    if (m2p_heuristic_parse(heuristic.c_str(), &config.heuristic) != M2P_OK) {
        cerr << "model2plan: " << m2p_last_error() << "\n";
        return ExitInput;
    }
    if (max_expansions)
        config.max_expansions = max_expansions;

    int code = ExitOk;
    Task task = load_task(domain, problem, code);
    if (!task)
        return code;
    m2p_search_info info;
    m2p_plan *raw_plan = nullptr;
    m2p_status status = m2p_task_solve(task.get(), &config, &info, &raw_plan);
    PlanHandle plan(raw_plan);
    if (status != M2P_OK)
        return failure(status, nullptr, input_code(status));
    if (info.status == M2P_SEARCH_RESOURCE_LIMIT) {
        cerr << "model2plan: expansion limit reached after " << info.expanded << " expansions\n";
        return ExitFindings;
    }
    if (info.status == M2P_SEARCH_UNSOLVABLE) {
        cout << "no plan exists (" << info.expanded << " states expanded)\n";
        return ExitFindings;
    }
    string text = take(m2p_plan_format(plan.get()));
    cout << text;
    cerr << "expanded " << info.expanded << " states, generated " << info.generated << "\n";
    if (!out.empty() && !write_file(out, text))
        return ExitInput;
    return ExitOk;
}

int cmd_validate_plan(const string &domain, const string &problem, const string &plan_path) {
    int code = ExitOk;
    Task task = load_task(domain, problem, code);
    if (!task)
        return code;
    m2p_plan *raw_plan = nullptr;
    m2p_diagnostics *raw = nullptr;
    m2p_status status = m2p_plan_load(plan_path.c_str(), &raw_plan, &raw);
    PlanHandle plan(raw_plan);
    Diagnostics parse_findings(raw);
    if (status != M2P_OK)
        return failure(status, parse_findings.get(), ExitInput);

    int valid = 0;
    char *cost = nullptr;
    m2p_diagnostics *raw_findings = nullptr;
    status = m2p_task_validate_plan(task.get(), plan.get(), &valid, &cost, &raw_findings);
    Diagnostics findings(raw_findings);
    string cost_text = take(cost);
    if (status != M2P_OK)
        return failure(status, findings.get(), input_code(status));
    if (!valid) {
        print_diagnostics(findings.get());
        cout << "plan invalid\n";
        return ExitFindings;
    }
    cout << "plan valid, " << m2p_plan_length(plan.get()) << " step(s), cost = " << cost_text << "\n";
    return ExitOk;
}
}

int main(int argc, char **argv) {
    CLI::App app{"model2plan: stereotype-annotated models to PDDL, checking and cost-optimal planning"};
    app.require_subcommand(1);
    app.set_version_flag("--version", string(m2p_version()));
    int result = ExitOk;

    string scope, model_path;
    auto *validate = app.add_subcommand("validate", "check a model against the PDDL profile rules");
    validate->add_option("model", model_path, "model file (.pmif.xml)")->required();
    validate->add_option("--scope", scope, "id of the Domain package to validate");
    validate->add_flag("--json", json_output, "diagnostics as a JSON array");
    validate->callback([&] { result = cmd_validate(model_path, scope); });

    GenArgs gen_args;
    auto *gen = app.add_subcommand("gen", "generate domain.pddl and problem_<name>.pddl");
    gen->add_option("model", gen_args.model, "model file (.pmif.xml)")->required();
    gen->add_option("--out", gen_args.out, "output directory")->required();
    gen->add_option("--scope", gen_args.scope, "id of the Domain package to generate");
    gen->add_option("--problem", gen_args.problem, "generate only this instances block");
    gen->add_flag("--trace", gen_args.trace, "emit `; from <elementId>` comments");
    gen->add_flag("--no-header", gen_args.no_header, "omit the `; generated by` line");
    gen->add_flag("--json", json_output, "diagnostics as a JSON array");
    gen->callback([&] { result = cmd_gen(gen_args); });

    string domain, problem, plan_file, heuristic = "blind", out;
    uint64_t max_expansions = 0;
    auto *check = app.add_subcommand("check", "static consistency check of a domain/problem pair");
    check->add_option("domain", domain, "domain file")->required();
    check->add_option("problem", problem, "problem file")->required();
    check->add_flag("--json", json_output, "findings as a JSON array");
    check->callback([&] { result = cmd_check(domain, problem); });

    auto *solve = app.add_subcommand("solve", "compute a cost-optimal plan with A*");
    solve->add_option("domain", domain, "domain file")->required();
    solve->add_option("problem", problem, "problem file")->required();
    solve->add_option("--heuristic", heuristic, "blind or hmax")->capture_default_str();
    solve->add_option("--out", out, "write the plan to this file");
    solve->add_option("--max-expansions", max_expansions, "expansion cap (default 5000000)");
    solve->callback([&] { result = cmd_solve(domain, problem, heuristic, out, max_expansions); });

    auto *validate_plan = app.add_subcommand("validate-plan", "simulate a plan and check goal and cost");
    validate_plan->add_option("domain", domain, "domain file")->required();
    validate_plan->add_option("problem", problem, "problem file")->required();
    validate_plan->add_option("plan", plan_file, "plan file")->required();
    validate_plan->add_flag("--json", json_output, "findings as a JSON array");
    validate_plan->callback([&] { result = cmd_validate_plan(domain, problem, plan_file); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? ExitOk : ExitInput;
    }
    return result;
}
