#include "model2plan/generator.h"
#include "model2plan/pmif.h"

#include "process.h"
#include "random_models.h"

#include <doctest.h>

#include <random>

using namespace std;
using namespace model2plan;
using namespace model2plan::ir;

namespace {
struct Generated {
    ModelDocument doc;
    pddl::Domain domain;
};

Generated collar() {
    Generated g{pmif::load_pmif(testing::fixture_path("collar_screwing.pmif.xml")), {}};
    g.domain = gen::create_pddl_domain(domain_scope(g.doc), g.doc).domain;
    return g;
}

vector<Diagnostic> problem_findings(const InstanceData &data, const Generated &g) {
    try {
        gen::create_pddl_problem(data, g.domain, g.doc);
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ProblemGeneration);
        return e.diagnostics();
    }
    return {};
}

// Two rivets, both to be screwed, with their distances.
InstanceData two_rivets() {
    InstanceData data;
    data.problem_name = "two";
    data.domain_ref = "collarScrewingDomain";
    data.objects = {{"rivet1", "rivet"}, {"rivet2", "rivet"}};
    data.init_fluents = {{"RivetDistanceInformation", {"rivet1", "rivet2"}, Rational(3, 2)},
                         {"RivetDistanceInformation", {"rivet2", "rivet1"}, Rational(3, 2)}};
    data.goal_facts = {{"CollarScrewed", {"rivet1"}, false}, {"CollarScrewed", {"rivet2"}, false}};
    return data;
}
}

TEST_CASE("two-rivet instance") {
    Generated g = collar();
    pddl::Problem p = gen::create_pddl_problem(two_rivets(), g.domain, g.doc);
    string text = pddl::emit_problem(p);
    CHECK(text.find("(:goal (and (CollarScrewed rivet1) (CollarScrewed rivet2)))") != string::npos);
    CHECK(text.find("(:objects rivet1 rivet2 - Rivet)") != string::npos);
    // total-cost is declared and not initialized explicitly.
    REQUIRE(p.init_fluents.size() == 3);
    CHECK(p.init_fluents.back().fluent.name == "total-cost");
    CHECK(p.init_fluents.back().value == Rational(0));
    REQUIRE(p.metric);
    CHECK(p.metric->fluent.name == "total-cost");
    CHECK(pddl::parse_problem(text) == p);
}

TEST_CASE("fixture instance keeps input order") {
    Generated g = collar();
    pddl::Problem p = gen::create_pddl_problem(g.doc.instances.at(0), g.domain, g.doc);
    CHECK(p.name == "rivets4tools2");
    CHECK(p.domain_name == "CollarScrewingDomain");
    REQUIRE(p.objects.size() == 6);
    CHECK(p.objects[4] == pddl::TypedName{"toolA", "ScrewingToolA"});
    REQUIRE(p.init.size() == 7);
    CHECK(pddl::format_atom(p.init[0]) == "(EnergySupply)");
    CHECK(pddl::format_atom(p.init[6]) == "(RequiresTool rivet4 toolB)");
    CHECK(p.init_fluents.size() == 18);
    CHECK(pddl::format_atom(p.init_fluents[0].fluent) == "(ToolChangeCost)");
}

TEST_CASE("unknown predicate") {
    Generated g = collar();
    InstanceData data = two_rivets();
    data.init_facts.push_back({"Bolted", {"rivet1"}, false});
    auto d = problem_findings(data, g);
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule_id == "UnknownPredicate");
    CHECK(d[0].message.find("'Bolted'") != string::npos);
    CHECK(d[0].element_id == "two");
}

TEST_CASE("empty goal") {
    Generated g = collar();
    InstanceData data = two_rivets();
    data.goal_facts.clear();
    auto d = problem_findings(data, g);
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule_id == "EmptyGoal");
}

TEST_CASE("other inconsistencies") {
    Generated g = collar();
    SUBCASE("unknown object in the goal") {
        InstanceData data = two_rivets();
        data.goal_facts.push_back({"CollarScrewed", {"rivet9"}, false});
        auto d = problem_findings(data, g);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "UnknownObject");
    }
    SUBCASE("arity") {
        InstanceData data = two_rivets();
        data.init_facts.push_back({"ToolMounted", {}, false});
        auto d = problem_findings(data, g);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "ArityMismatch");
    }
    SUBCASE("type") {
        InstanceData data = two_rivets();
        data.init_facts.push_back({"ToolMounted", {"rivet1"}, false});
        auto d = problem_findings(data, g);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "TypeMismatch");
    }
    SUBCASE("unknown function") {
        InstanceData data = two_rivets();
        data.init_fluents.push_back({"Fuel", {}, Rational(1)});
        auto d = problem_findings(data, g);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "UnknownFunction");
    }
    SUBCASE("object typed by a class that is not a domain type") {
        InstanceData data = two_rivets();
        data.objects.push_back({"ctrl", "robotController"});
        auto d = problem_findings(data, g);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "UnknownType");
    }
    SUBCASE("duplicate object") {
        InstanceData data = two_rivets();
        data.objects.push_back({"rivet1", "rivet"});
        auto d = problem_findings(data, g);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "DuplicateObject");
    }
    SUBCASE("all findings are collected") {
        InstanceData data = two_rivets();
        data.init_facts.push_back({"Bolted", {}, false});
        data.goal_facts.push_back({"CollarScrewed", {"rivet9"}, false});
        CHECK(problem_findings(data, g).size() == 2);
    }
}

TEST_CASE("explicit total-cost initialization is not duplicated") {
    Generated g = collar();
    InstanceData data = two_rivets();
    data.init_fluents.push_back({"total-cost", {}, Rational(5)});
    pddl::Problem p = gen::create_pddl_problem(data, g.domain, g.doc);
    int count = 0;
    for (const pddl::FluentInit &f : p.init_fluents)
        count += f.fluent.name == "total-cost";
    CHECK(count == 1);
}

TEST_CASE("property: every problem symbol is declared with matching arity and compatible types") {
    mt19937 rng(8);
    for (int i = 0; i < 200; ++i) {
        ModelDocument doc = testing::random_valid_model(rng);
        pddl::Domain domain = gen::create_pddl_domain(domain_scope(doc), doc).domain;
        pddl::Problem p;
        try {
            p = gen::create_pddl_problem(doc.instances.at(0), domain, doc);
        } catch (const Error &e) {
            FAIL_CHECK(format_diagnostics_text(e.diagnostics()));
            continue;
        }
        auto check_atom = [&](const pddl::Atom &atom, const pddl::Signature *s) {
            INFO(pddl::format_atom(atom));
            REQUIRE(s);
            REQUIRE(atom.args.size() == s->parameters.size());
            for (size_t k = 0; k < atom.args.size(); ++k) {
                const pddl::TypedName *object = p.find_object(atom.args[k].name);
                REQUIRE(object);
                CHECK(domain.is_subtype(object->type, s->parameters[k].type));
            }
        };
        for (const pddl::Atom &atom : p.init)
            check_atom(atom, domain.find_predicate(atom.name));
        for (const pddl::FluentInit &f : p.init_fluents)
            check_atom(f.fluent, domain.find_function(f.fluent.name));
        for (const pddl::Literal &l : p.goal.literals)
            check_atom(l.atom, domain.find_predicate(l.atom.name));
        CHECK(pddl::parse_problem(pddl::emit_problem(p)) == p);
    }
}
