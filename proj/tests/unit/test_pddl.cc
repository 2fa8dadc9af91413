#include "model2plan/diagnostic.h"
#include "model2plan/pddl.h"

#include "process.h"
#include "random_tasks.h"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace std;
using namespace model2plan;
using namespace model2plan::pddl;

namespace {
vector<string> tokens(const string &text) {
    string spaced;
    for (char c : text) {
        if (c == '(' || c == ')')
            spaced += string(" ") + c + " ";
        else
            spaced += c;
    }
    istringstream in(spaced);
    vector<string> out;
    for (string t; in >> t;)
        out.push_back(t);
    return out;
}

const char *assembly_domain = R"(
(define (domain assembly)
  (:requirements :strips :typing)
  (:types part tool - object)
  (:predicates (available ?t - tool) (assembled ?p - part))
  (:action assemble-part
   :parameters (?p - part ?t - tool)
   :precondition (available ?t)
   :effect (assembled ?p)))
)";

Domain screwing_types() {
    Domain d;
    d.name = "d";
    d.types = {{"CSS", "object", {}}, {"ScrewingTool", "CSS", {}}, {"ScrewingToolA", "ScrewingTool", {}},
               {"ScrewingToolB", "ScrewingTool", {}}};
    d.requirements = compute_requirements(d);
    return d;
}

ErrorCode parse_failure(const string &text) {
    try {
        parse_domain(text);
    } catch (const Error &e) {
        for (const Diagnostic &d : e.diagnostics())
            CHECK(d.line > 0);
        return e.code();
    }
    FAIL("input was accepted");
    return ErrorCode::Io;
}
}

TEST_CASE("types grouped per parent") {
    string text = emit_domain(screwing_types());
    CHECK(text.find("\n    CSS - object\n") != string::npos);
    CHECK(text.find("\n    ScrewingTool - CSS\n") != string::npos);
    CHECK(text.find("\n    ScrewingToolA ScrewingToolB - ScrewingTool\n") != string::npos);
}

TEST_CASE("predicate block matches the golden text") {
    Domain d;
    d.name = "net";
    d.types = {{"Resource", "object", {}}, {"Location", "object", {}}};
    d.predicates = {{"is-available", {{"r", "Resource"}}, {}},
                    {"connected", {{"a", "Location"}, {"b", "Location"}}, {}}};
    string text = emit_domain(d);
    size_t start = text.find("(:predicates");
    REQUIRE(start != string::npos);
    size_t end = text.find("\n  )", start);
    string block = text.substr(start, end + 4 - start);
    CHECK(tokens(block) == tokens(testing::read_file(testing::fixture_path("golden/predicates_block.pddl"))));
}

TEST_CASE("empty domain") {
    Domain d;
    d.name = "d";
    CHECK(emit_domain(d) == "(define (domain d))\n");
    CHECK(parse_domain(emit_domain(d)) == d);
    CHECK(compute_requirements(d) == vector<string>{":strips"});
}

TEST_CASE("problem emission") {
    Problem p;
    p.name = "p1";
    p.domain_name = "d";
    p.objects = {{"rivet1", "Rivet"}};
    p.goal = Formula::single({{"CollarScrewed", {Term::constant("rivet1")}}, false, {}});
    string text = emit_problem(p);
    CHECK(text.find("(:objects rivet1 - Rivet)") != string::npos);
    CHECK(text.find("(:goal (CollarScrewed rivet1))") != string::npos);
    CHECK(text.find("(:init") == string::npos);

    p.metric = Metric{MetricDirection::Minimize, {"total-cost", {}}};
    CHECK(emit_problem(p).find("(:metric minimize (total-cost))") != string::npos);
    CHECK(parse_problem(emit_problem(p)) == p);
}

TEST_CASE("parsing the assembly domain") {
    Domain d = parse_domain(assembly_domain);
    const Action *a = d.find_action("assemble-part");
    REQUIRE(a);
    REQUIRE(a->parameters.size() == 2);
    CHECK(a->parameters[0] == TypedName{"p", "part"});
    CHECK(a->parameters[1] == TypedName{"t", "tool"});
    REQUIRE(a->precondition.literals.size() == 1);
    CHECK_FALSE(a->precondition.conjunction);
    CHECK(a->precondition.literals[0].atom == Atom{"available", {Term::variable("t")}});
    REQUIRE(a->effect.items.size() == 1);

    // The emitted action equals the golden text up to whitespace.
    string emitted = emit_domain(d);
    size_t start = emitted.find("(:action");
    string action = emitted.substr(start, emitted.rfind(')') - start);
    CHECK(tokens(action) == tokens(testing::read_file(testing::fixture_path("golden/assemble_part.pddl"))));
}

TEST_CASE("unsupported features and syntax errors") {
    CHECK(parse_failure("(define (domain d) (:durative-action move :parameters ()))") ==
          ErrorCode::UnsupportedFeature);
    try {
        parse_domain("(define (domain d) (:durative-action move))");
    } catch (const Error &e) {
        CHECK(string(e.what()).find("durative-action") != string::npos);
    }
    CHECK(parse_failure("(define (domain d) (:requirements :fluents))") == ErrorCode::UnsupportedFeature);
    CHECK(parse_failure("(define (domain d)") == ErrorCode::SyntaxError);
    CHECK(parse_failure("(define (domain d)))") == ErrorCode::SyntaxError);
    CHECK(parse_failure("(define (domain d) (:predicates (p ?x)) (:action a :parameters (?x) "
                        ":precondition (or (p ?x) (p ?x)) :effect (p ?x)))") == ErrorCode::UnsupportedFeature);
}

TEST_CASE("comments are skipped and names keep their case") {
    Domain d = parse_domain("; header\n(define (domain My-Domain) ; trailing\n (:predicates (Ready)))");
    CHECK(d.name == "My-Domain");
    REQUIRE(d.predicates.size() == 1);
    CHECK(d.find_predicate("READY"));
}

TEST_CASE("requirements") {
    Domain untyped = parse_domain("(define (domain d) (:predicates (p) (q)) "
                                  "(:action a :parameters () :precondition (p) :effect (q)))");
    CHECK(compute_requirements(untyped) == vector<string>{":strips"});

    Domain negative = parse_domain("(define (domain d) (:requirements :negative-preconditions) (:predicates (p)) "
                                   "(:action a :parameters () :precondition (not (p)) :effect (p)))");
    CHECK(compute_requirements(negative) == vector<string>{":strips", ":negative-preconditions"});
}

TEST_CASE("property: parse(emit(d)) == d over random domain and problem ASTs") {
    mt19937 rng(99);
    for (int i = 0; i < 500; ++i) {
        Domain d = testing::random_domain_ast(rng);
        string text = emit_domain(d);
        Domain back;
        try {
            back = parse_domain(text);
        } catch (const Error &e) {
            FAIL_CHECK(e.what() << "\n" << text);
            continue;
        }
        CHECK(back == d);
        CHECK(emit_domain(back) == text);

        Problem p = testing::random_problem_ast(rng, d);
        string ptext = emit_problem(p);
        try {
            Problem pback = parse_problem(ptext);
            CHECK(pback == p);
            CHECK(emit_problem(pback) == ptext);
        } catch (const Error &e) {
            FAIL_CHECK(e.what() << "\n" << ptext);
        }
    }
}

TEST_CASE("emission is deterministic") {
    mt19937 a(3), b(3);
    for (int i = 0; i < 50; ++i)
        CHECK(emit_domain(testing::random_domain_ast(a)) == emit_domain(testing::random_domain_ast(b)));
}
