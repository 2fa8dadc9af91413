#include "model2plan/generator.h"
#include "model2plan/planner.h"
#include "model2plan/pmif.h"

#include "oracle.h"
#include "process.h"
#include "random_tasks.h"

#include <doctest.h>

#include <random>

using namespace std;
using namespace model2plan;
using namespace model2plan::plan;

namespace {
struct Pair {
    pddl::Domain domain;
    pddl::Problem problem;
};

Pair collar() {
    ir::ModelDocument doc = pmif::load_pmif(testing::fixture_path("collar_screwing.pmif.xml"));
    Pair p;
    p.domain = gen::create_pddl_domain(ir::domain_scope(doc), doc).domain;
    p.problem = gen::create_pddl_problem(doc.instances.at(0), p.domain, doc);
    return p;
}

Pair parse_pair(const string &domain, const string &problem) {
    return {pddl::parse_domain(domain), pddl::parse_problem(problem)};
}

// An optimal collar plan, as found by the independent oracle script.
const char *collar_plan = R"((ScrewCollar rivet1 toolA)
(MoveToNextRivet rivet1 rivet3)
(ScrewCollar rivet3 toolA)
(MoveToNextRivet rivet3 rivet2)
(MoveToNextRivet rivet3 rivet4)
(ChangeTool toolA toolB)
(ScrewCollar rivet2 toolB)
(ScrewCollar rivet4 toolB)
; cost = 40.5 (general cost)
)";

const char *move_only_domain = R"(
(define (domain moves)
  (:requirements :strips :typing :action-costs)
  (:types Rivet - object)
  (:predicates (CollarScrewed ?r - Rivet) (EnergySupply) (MovedToNextRivet ?r - Rivet))
  (:functions (total-cost) (RivetDistanceInformation ?from - Rivet ?to - Rivet))
  (:action MoveToNextRivet
   :parameters (?from - Rivet ?to - Rivet)
   :precondition (and (CollarScrewed ?from) (EnergySupply))
   :effect (and (MovedToNextRivet ?to) (increase (total-cost) (RivetDistanceInformation ?from ?to)))))
)";

const char *three_rivets = R"(
(define (problem three) (:domain moves)
  (:objects r1 r2 r3 - Rivet)
  (:init (EnergySupply) (CollarScrewed r1) (CollarScrewed r2) (CollarScrewed r3)
    (= (RivetDistanceInformation r1 r2) 1) (= (RivetDistanceInformation r1 r3) 2)
    (= (RivetDistanceInformation r2 r1) 1) (= (RivetDistanceInformation r2 r3) 1)
    (= (RivetDistanceInformation r3 r1) 2) (= (RivetDistanceInformation r3 r2) 1)
    (= (total-cost) 0))
  (:goal (MovedToNextRivet r3))
  (:metric minimize (total-cost)))
)";

const char *toy_domain = R"(
(define (domain toy)
  (:predicates (p) (q) (r))
  (:action a :parameters () :precondition (q) :effect (r))
  (:action b :parameters () :precondition (p) :effect (and (not (p)) (r))))
)";

string toy_problem(const string &init, const string &goal) {
    return "(define (problem t) (:domain toy) (:init " + init + ") (:goal " + goal + "))";
}

FactSet to_fact_set(const GroundTask &task, const testing::OracleState &state) {
    FactSet set(task.facts.size());
    for (const string &key : state)
        if (auto it = task.fact_ids.find(key); it != task.fact_ids.end())
            set.set(it->second);
    return set;
}
}

TEST_CASE("grounding MoveToNextRivet over three rivets") {
    Pair p = parse_pair(move_only_domain, three_rivets);
    GroundTask task = ground(p.domain, p.problem);
    CHECK(task.bindings == 9);
    // Bindings with from = to have no distance and are pruned.
    REQUIRE(task.actions.size() == 6);
    CHECK(task.actions[0].label() == "(MoveToNextRivet r1 r2)");
    CHECK(task.actions[0].cost == Rational(1));
    CHECK(task.actions[5].label() == "(MoveToNextRivet r3 r2)");
    CHECK_FALSE(task.unit_cost);
}

TEST_CASE("grounding edge cases") {
    SUBCASE("a nullary action has one binding") {
        Pair p = parse_pair(toy_domain, toy_problem("(p)", "(r)"));
        GroundTask task = ground(p.domain, p.problem);
        CHECK(task.bindings == 2);
        CHECK(task.unit_cost);
        // a needs the static fact q, which never holds.
        REQUIRE(task.actions.size() == 1);
        CHECK(task.actions[0].name == "b");
    }
    SUBCASE("no objects, no bindings") {
        Pair p = parse_pair(move_only_domain, "(define (problem e) (:domain moves) (:init) (:goal (EnergySupply)))");
        GroundTask task = ground(p.domain, p.problem);
        CHECK(task.bindings == 0);
        CHECK(task.actions.empty());
    }
    SUBCASE("the cap is enforced") {
        Pair p = collar();
        GroundConfig config;
        config.max_actions = 2;
        try {
            ground(p.domain, p.problem, config);
            FAIL("cap not enforced");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::GroundingExplosion);
        }
    }
    SUBCASE("maximize metrics are not supported") {
        Pair p = parse_pair(move_only_domain, three_rivets);
        p.problem.metric->direction = pddl::MetricDirection::Maximize;
        try {
            ground(p.domain, p.problem);
            FAIL("maximize accepted");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::UnsupportedFeature);
        }
    }
    SUBCASE("contradictory preconditions are pruned") {
        Pair p = collar();
        GroundTask task = ground(p.domain, p.problem);
        for (const GroundAction &a : task.actions)
            if (a.name == "ChangeTool")
                CHECK(a.args[0] != a.args[1]);
    }
}

TEST_CASE("static checks") {
    Pair fixture = collar();
    CHECK(check_task(fixture.domain, fixture.problem).empty());

    SUBCASE("undeclared predicate") {
        Pair p = fixture;
        p.problem.init.push_back({"Bolted", {pddl::Term::constant("rivet1")}});
        auto d = check_task(p.domain, p.problem);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "UndefinedSymbol");
        CHECK(d[0].message.find("'Bolted'") != string::npos);
    }
    SUBCASE("arity") {
        Pair p = fixture;
        p.problem.init.push_back({"EnergySupply", {pddl::Term::constant("rivet1")}});
        auto d = check_task(p.domain, p.problem);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "ArityMismatch");
    }
    SUBCASE("type") {
        Pair p = fixture;
        p.problem.init.push_back({"ToolMounted", {pddl::Term::constant("rivet1")}});
        auto d = check_task(p.domain, p.problem);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "TypeMismatch");
    }
    SUBCASE("missing requirement") {
        Pair p = fixture;
        p.domain.requirements = {":strips", ":typing", ":action-costs"};
        auto d = check_task(p.domain, p.problem);
        REQUIRE(!d.empty());
        CHECK(d[0].rule_id == "MissingRequirement");
    }
    SUBCASE("domain name") {
        Pair p = fixture;
        p.problem.domain_name = "other";
        auto d = check_task(p.domain, p.problem);
        REQUIRE(d.size() == 1);
        CHECK(d[0].rule_id == "DomainMismatch");
    }
    SUBCASE("unreachable action and goal") {
        Pair p = parse_pair(toy_domain, toy_problem("(p)", "(q)"));
        auto d = check_task(p.domain, p.problem);
        REQUIRE(d.size() == 2);
        CHECK(d[0].rule_id == "UnreachableAction");
        CHECK(d[0].element_id == "a");
        CHECK(d[1].rule_id == "UnsatisfiableGoal");
    }
}

TEST_CASE("plan validation") {
    Pair p = collar();
    GroundTask task = ground(p.domain, p.problem);

    SUBCASE("the empty plan does not reach the goal") {
        ValidationResult r = validate_plan(task, Plan{});
        CHECK_FALSE(r.valid);
        CHECK(r.cost == Rational(0));
        REQUIRE(r.findings.size() == 1);
        CHECK(r.findings[0].rule_id == "GoalNotSatisfied");
    }
    SUBCASE("the oracle plan is valid at cost 81/2") {
        ValidationResult r = validate_plan(task, parse_plan(collar_plan));
        CHECK(r.valid);
        CHECK(r.findings.empty());
        CHECK(r.cost == Rational(81, 2));
    }
    SUBCASE("swapped steps violate the earlier precondition") {
        Plan plan = parse_plan(collar_plan);
        swap(plan.steps[0], plan.steps[1]);
        ValidationResult r = validate_plan(task, plan);
        CHECK_FALSE(r.valid);
        REQUIRE(r.findings.size() == 1);
        CHECK(r.findings[0].rule_id == "PreconditionViolated");
        CHECK(r.findings[0].element_id == "step-1");
        CHECK(r.findings[0].message.find("(CollarScrewed rivet1)") != string::npos);
    }
    SUBCASE("declared cost differs") {
        Plan plan = parse_plan(collar_plan);
        plan.cost = Rational(40);
        ValidationResult r = validate_plan(task, plan);
        CHECK_FALSE(r.valid);
        REQUIRE(r.findings.size() == 1);
        CHECK(r.findings[0].rule_id == "CostMismatch");
    }
    SUBCASE("unknown action and bad arguments") {
        Plan plan = parse_plan("(Teleport rivet1)");
        CHECK(validate_plan(task, plan).findings.at(0).rule_id == "UnknownAction");
        plan = parse_plan("(ScrewCollar rivet1)");
        CHECK(validate_plan(task, plan).findings.at(0).rule_id == "InvalidArguments");
        plan = parse_plan("(ScrewCollar toolA rivet1)");
        CHECK(validate_plan(task, plan).findings.at(0).rule_id == "InvalidArguments");
    }
    SUBCASE("a step pruned by grounding is still diagnosed at the lifted level") {
        // No distance from a rivet to itself.
        Plan plan = parse_plan("(ScrewCollar rivet1 toolA)\n(MoveToNextRivet rivet1 rivet1)");
        ValidationResult r = validate_plan(task, plan);
        REQUIRE(!r.findings.empty());
        CHECK(r.findings[0].rule_id == "UndefinedFluent");
        CHECK(r.findings[0].element_id == "step-2");
    }
}

TEST_CASE("plan text formats") {
    Plan plan = parse_plan("0: (ScrewCollar rivet1 toolA) [1]\n; a remark\n1: (ChangeTool toolA toolB) [1]\n");
    REQUIRE(plan.steps.size() == 2);
    CHECK(plan.steps[1] == PlanStep{"ChangeTool", {"toolA", "toolB"}});
    CHECK_FALSE(plan.cost);

    Plan with_cost = parse_plan(collar_plan);
    CHECK(with_cost.cost == Rational(81, 2));
    CHECK(format_plan(with_cost) == collar_plan);
    CHECK(parse_plan(format_plan(with_cost)) == with_cost);

    CHECK_THROWS_AS(parse_plan("ScrewCollar rivet1"), Error);
    CHECK_THROWS_AS(parse_plan("(ScrewCollar rivet1"), Error);
}

TEST_CASE("search") {
    SUBCASE("collar fixture with both heuristics") {
        Pair p = collar();
        GroundTask task = ground(p.domain, p.problem);
        for (Heuristic h : {Heuristic::Blind, Heuristic::HMax}) {
            PlannerConfig config;
            config.heuristic = h;
            SearchResult r = search(task, config);
            REQUIRE(r.status == SearchStatus::Solved);
            REQUIRE(r.plan);
            CHECK(r.plan->cost == Rational(81, 2));
            CHECK(validate_plan(task, *r.plan).valid);
        }
        optional<Rational> h0 = hmax(task, task.init);
        REQUIRE(h0);
        CHECK(*h0 <= Rational(81, 2));
    }
    SUBCASE("goal already true") {
        Pair p = parse_pair(toy_domain, toy_problem("(p) (r)", "(r)"));
        SearchResult r = search(ground(p.domain, p.problem));
        REQUIRE(r.status == SearchStatus::Solved);
        CHECK(r.plan->steps.empty());
        CHECK(r.plan->cost == Rational(0));
    }
    SUBCASE("unreachable goal") {
        Pair p = parse_pair(toy_domain, toy_problem("(p)", "(and (r) (p))"));
        GroundTask task = ground(p.domain, p.problem);
        CHECK(search(task).status == SearchStatus::Unsolvable);
        // The relaxation cannot see the conflict, so it still gives a finite value.
        CHECK(hmax(task, task.init) == Rational(1));
        Pair q = parse_pair(toy_domain, toy_problem("(p)", "(q)"));
        GroundTask unreachable = ground(q.domain, q.problem);
        CHECK_FALSE(hmax(unreachable, unreachable.init));
        PlannerConfig config;
        config.heuristic = Heuristic::HMax;
        CHECK(search(unreachable, config).status == SearchStatus::Unsolvable);
    }
    SUBCASE("expansion cap") {
        Pair p = collar();
        PlannerConfig config;
        config.max_expansions = 2;
        CHECK(search(ground(p.domain, p.problem), config).status == SearchStatus::ResourceLimit);
    }
    CHECK(parse_heuristic("HMAX") == Heuristic::HMax);
    CHECK(parse_heuristic("blind") == Heuristic::Blind);
    CHECK_FALSE(parse_heuristic("ff"));
}

TEST_CASE("property: optimality, soundness and admissibility against the oracle") {
    mt19937 rng(77);
    int compared = 0, solvable = 0;
    for (int attempt = 0; attempt < 400 && compared < 60; ++attempt) {
        testing::RandomTask t = testing::random_task(rng);
        optional<testing::StateSpace> space = testing::explore(t.domain, t.problem, 5000);
        if (!space)
            continue;
        ++compared;
        INFO(pddl::emit_domain(t.domain) << pddl::emit_problem(t.problem));
        vector<optional<Rational>> h_star = testing::cost_to_go(*space);
        GroundTask task = ground(t.domain, t.problem);

        for (Heuristic h : {Heuristic::Blind, Heuristic::HMax}) {
            PlannerConfig config;
            config.heuristic = h;
            SearchResult r = search(task, config);
            if (!h_star[0]) {
                CHECK(r.status == SearchStatus::Unsolvable);
                continue;
            }
            REQUIRE(r.status == SearchStatus::Solved);
            CHECK(r.plan->cost == *h_star[0]);
            ValidationResult v = validate_plan(task, *r.plan);
            CHECK(v.valid);
            CHECK(v.cost == *h_star[0]);
        }
        solvable += h_star[0].has_value();

        // hmax never exceeds the true cost-to-go, and never declares a
        // solvable state dead.
        Relaxation relaxed = relaxed_reachability(task, task.init);
        for (size_t s = 0; s < space->states.size(); s += 1 + space->states.size() / 40) {
            FactSet state = to_fact_set(task, space->states[s]);
            optional<Rational> h = hmax(task, state);
            if (h_star[s]) {
                REQUIRE(h);
                CHECK(*h <= *h_star[s]);
            }
            for (const string &key : space->states[s])
                if (auto it = task.fact_ids.find(key); it != task.fact_ids.end())
                    CHECK(relaxed.facts[it->second]);
        }
    }
    CHECK(compared >= 50);
    CHECK(solvable > 0);
}
