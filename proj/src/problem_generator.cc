#include "model2plan/generator.h"

#include "model2plan/names.h"

#include <set>

using namespace std;

namespace model2plan::gen {

namespace {
class ProblemBuilder {
    const ir::InstanceData &instances;
    const pddl::Domain &domain;
    const ir::ModelDocument &document;
    string element;
    vector<Diagnostic> findings;
    pddl::Problem problem;

    void report(string rule, string message) {
        findings.push_back({Severity::Error, std::move(rule), element, std::move(message)});
    }

    // Model class id -> declared PDDL type name, or nullopt.
    optional<string> resolve_type(const string &class_id) {
        auto ref = ir::find_element(document, class_id);
        const ir::ClassElement *const *cls = ref ? get_if<const ir::ClassElement *>(&*ref) : nullptr;
        if (!cls || !(*cls)->is_type())
            return nullopt;
        string name = sanitize_name((*cls)->name);
        const pddl::TypeDecl *decl = domain.find_type(name);
        if (!decl)
            return nullopt;
        return decl->name;
    }

    void objects() {
        for (const ir::InstanceObject &object : instances.objects) {
            optional<string> type = resolve_type(object.type_ref);
            if (!type) {
                report("UnknownType", "object '" + object.name + "' has type '" + object.type_ref +
                                      "', which is not a type of domain '" + domain.name + "'");
                continue;
            }
            if (problem.find_object(object.name)) {
                report("DuplicateObject", "object '" + object.name + "' is declared twice");
                continue;
            }
            problem.objects.push_back({object.name, *type});
        }
    }

    // Ground atom over declared objects, checked against the signature.
    optional<pddl::Atom> ground_atom(const pddl::Signature *signature, const string &name,
                                     const vector<string> &args, string_view what) {
        if (!signature)
            return nullopt;
        bool ok = true;
        if (args.size() != signature->parameters.size()) {
            report("ArityMismatch", string(what) + " '" + name + "' takes " +
                                    to_string(signature->parameters.size()) + " argument(s), got " +
                                    to_string(args.size()));
            return nullopt;
        }
        pddl::Atom atom{signature->name, {}};
        for (size_t i = 0; i < args.size(); ++i) {
            const pddl::TypedName *object = problem.find_object(args[i]);
            if (!object) {
                report("UnknownObject", "argument '" + args[i] + "' of " + string(what) + " '" + name +
                                        "' is not a declared object");
                ok = false;
                continue;
            }
            const string &expected = signature->parameters[i].type;
            if (!domain.is_subtype(object->type, expected)) {
                report("TypeMismatch", "argument '" + args[i] + "' of " + string(what) + " '" + name +
                                       "' has type " + object->type + ", expected " + expected);
                ok = false;
            }
            atom.args.push_back(pddl::Term::constant(object->name));
        }
        if (!ok)
            return nullopt;
        return atom;
    }

    optional<pddl::Atom> fact(const ir::FactSpec &spec) {
        const pddl::Signature *signature = domain.find_predicate(sanitize_name(spec.name));
        if (!signature) {
            report("UnknownPredicate", "predicate '" + spec.name + "' is not declared in domain '" +
                                       domain.name + "'");
            return nullopt;
        }
        return ground_atom(signature, spec.name, spec.arguments, "predicate");
    }

    const pddl::Signature *function(const string &name) {
        const pddl::Signature *signature = domain.find_function(sanitize_name(name));
        if (!signature)
            report("UnknownFunction", "function '" + name + "' is not declared in domain '" + domain.name + "'");
        return signature;
    }

    void init() {
        for (const ir::FactSpec &spec : instances.init_facts) {
            if (optional<pddl::Atom> atom = fact(spec))
                problem.init.push_back(std::move(*atom));
        }
        for (const ir::FluentSpec &spec : instances.init_fluents) {
            const pddl::Signature *signature = function(spec.name);
            optional<pddl::Atom> atom = ground_atom(signature, spec.name, spec.arguments, "function");
            if (!atom)
                continue;
            bool repeated = false;
            for (const pddl::FluentInit &existing : problem.init_fluents)
                repeated = repeated || existing.fluent == *atom;
            if (repeated) {
                report("DuplicateFluent", "fluent " + pddl::format_atom(*atom) + " is initialized twice");
                continue;
            }
            problem.init_fluents.push_back({std::move(*atom), spec.value});
        }
        const pddl::Signature *cost = domain.find_function(pddl::total_cost);
        if (cost && cost->parameters.empty()) {
            bool initialized = false;
            for (const pddl::FluentInit &f : problem.init_fluents)
                initialized = initialized || iequals(f.fluent.name, pddl::total_cost);
            if (!initialized)
                problem.init_fluents.push_back({{cost->name, {}}, Rational(0)});
        }
    }

    void goal() {
        if (instances.goal_facts.empty()) {
            report("EmptyGoal", "problem '" + instances.problem_name + "' has no goal facts");
            return;
        }
        vector<pddl::Literal> literals;
        for (const ir::FactSpec &spec : instances.goal_facts) {
            if (optional<pddl::Atom> atom = fact(spec))
                literals.push_back({std::move(*atom), spec.negated, {}});
        }
        problem.goal = pddl::Formula::conjoin(std::move(literals));
    }

    void metric() {
        if (instances.metric) {
            const pddl::Signature *signature = function(instances.metric->fluent);
            if (!signature)
                return;
            if (!signature->parameters.empty()) {
                report("ArityMismatch", "metric fluent '" + instances.metric->fluent + "' must be 0-ary");
                return;
            }
            pddl::Metric m;
            m.direction = instances.metric->direction == ir::MetricDirection::Maximize
                              ? pddl::MetricDirection::Maximize : pddl::MetricDirection::Minimize;
            m.fluent = {signature->name, {}};
            problem.metric = m;
        } else if (const pddl::Signature *cost = domain.find_function(pddl::total_cost);
                   cost && cost->parameters.empty()) {
            problem.metric = pddl::Metric{pddl::MetricDirection::Minimize, {cost->name, {}}};
        }
    }

public:
    ProblemBuilder(const ir::InstanceData &instances, const pddl::Domain &domain, const ir::ModelDocument &document)
        : instances(instances), domain(domain), document(document), element(ir::instance_element_id(instances)) {
    }

    pddl::Problem build() {
        problem.name = sanitize_name(instances.problem_name);
        problem.domain_name = domain.name;
        objects();
        init();
        goal();
        metric();
        if (!findings.empty())
            throw Error(ErrorCode::ProblemGeneration, std::move(findings));
        return std::move(problem);
    }
};
}

pddl::Problem create_pddl_problem(const ir::InstanceData &instances, const pddl::Domain &domain,
                                  const ir::ModelDocument &document) {
    return ProblemBuilder(instances, domain, document).build();
}

}
