#include "model2plan/pmif.h"
#include "model2plan/profile.h"

#include "process.h"
#include "random_models.h"

#include <doctest.h>

#include <random>

using namespace std;
using namespace model2plan;
using namespace model2plan::ir;

namespace {
vector<Diagnostic> validate_fixture(const string &name) {
    ModelDocument doc = pmif::load_pmif(testing::fixture_path(name));
    return profile::validate(domain_scope(doc), doc);
}

vector<Diagnostic> validate_text(const string &text) {
    ModelDocument doc = pmif::parse_pmif(text);
    return profile::validate(domain_scope(doc), doc);
}

string domain_with(const string &body) {
    return R"(<model name="m"><package id="p" name="D" stereotype="PDDL_Domain">)"
           R"(<class id="rivet" name="Rivet" stereotype="PDDL_Type"/>)" +
           body + "</package></model>";
}
}

TEST_CASE("catalogue") {
    const auto &rules = profile::rule_catalogue();
    REQUIRE(rules.size() == 7);
    CHECK(rules.front().id == "UniqueTypeNames");
    CHECK(profile::find_rule("EmptyDomain")->severity == Severity::Warning);
    CHECK(profile::find_rule("UnboundFlowArgument")->recoverable);
    CHECK_FALSE(profile::find_rule("UniqueTypeNames")->recoverable);
    CHECK(profile::find_rule("NoSuchRule") == nullptr);
}

TEST_CASE("clean fixtures") {
    CHECK(validate_fixture("collar_screwing.pmif.xml").empty());
    CHECK(validate_fixture("resource_network.pmif.xml").empty());
    CHECK(validate_fixture("assembly_station.pmif.xml").empty());
}

TEST_CASE("two Type classes named Rivet: one UniqueTypeNames error") {
    auto d = validate_fixture("duplicate_type_names.pmif.xml");
    REQUIRE(d.size() == 1);
    CHECK(d[0].severity == Severity::Error);
    CHECK(d[0].rule_id == "UniqueTypeNames");
    CHECK(d[0].element_id == "rivetB");
    CHECK(profile::blocks_generation(d));
}

TEST_CASE("empty domain is a warning") {
    auto d = validate_fixture("minimal.pmif.xml");
    REQUIRE(d.size() == 1);
    CHECK(d[0].severity == Severity::Warning);
    CHECK(d[0].rule_id == "EmptyDomain");
    CHECK_FALSE(profile::blocks_generation(d));
}

TEST_CASE("unbound flow argument names the variable") {
    auto d = validate_fixture("unbound_flow_argument.pmif.xml");
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule_id == "UnboundFlowArgument");
    CHECK(d[0].element_id == "moveMarks");
    CHECK(d[0].message.find("'x'") != string::npos);
    CHECK(d[0].message.find("MoveToNextRivet") != string::npos);
    CHECK_FALSE(profile::blocks_generation(d));
}

TEST_CASE("predicate arity disagreement") {
    auto d = validate_text(domain_with(R"(<activity id="a" name="A">)"
                                       R"(<action id="go" name="Go" stereotype="PDDL_Action">)"
                                       R"(<parameter name="r" type="rivet"/><parameter name="s" type="rivet"/></action>)"
                                       R"(<flow id="f1" kind="object" stereotype="PDDL_Predicate" name="At" target="go">)"
                                       R"(<argument var="r"/></flow>)"
                                       R"(<flow id="f2" kind="object" stereotype="PDDL_Predicate" name="At" source="go">)"
                                       R"(<argument var="r"/><argument var="s"/></flow></activity>)"));
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule_id == "UniquePredicateSignatures");
    CHECK(d[0].element_id == "f2");
}

TEST_CASE("name used as predicate and function") {
    auto d = validate_text(domain_with(R"(<activity id="a" name="A">)"
                                       R"(<action id="go" name="Go" stereotype="PDDL_Action"/>)"
                                       R"(<flow id="f1" kind="control" stereotype="PDDL_Predicate" name="Cost" source="go"/>)"
                                       R"(<flow id="f2" kind="control" stereotype="PDDL_Function" name="Cost" source="go" )"
                                       R"(effectKind="increase" fluent="total-cost"/></activity>)"));
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule_id == "UniquePredicateSignatures");
}

TEST_CASE("duplicate action names") {
    auto d = validate_text(domain_with(R"(<activity id="a" name="A">)"
                                       R"(<action id="go1" name="Go" stereotype="PDDL_Action"/>)"
                                       R"(<action id="go2" name="Go" stereotype="PDDL_Action"/>)"
                                       R"(<flow id="f1" kind="control" stereotype="PDDL_Predicate" name="Done" source="go1"/>)"
                                       R"(<flow id="f2" kind="control" stereotype="PDDL_Predicate" name="Done" source="go2"/>)"
                                       R"(</activity>)"));
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule_id == "UniqueActionNames");
    CHECK(d[0].element_id == "go2");
}

TEST_CASE("parameter typed by a class that is not a PDDL type") {
    auto d = validate_text(domain_with(R"(<class id="ctrl" name="Controller"/><activity id="a" name="A">)"
                                       R"(<action id="go" name="Go" stereotype="PDDL_Action">)"
                                       R"(<parameter name="c" type="ctrl"/></action>)"
                                       R"(<flow id="f1" kind="control" stereotype="PDDL_Predicate" name="Done" source="go"/>)"
                                       R"(</activity>)"));
    REQUIRE(d.size() == 1);
    CHECK(d[0].rule_id == "TypedParameters");
    CHECK(profile::blocks_generation(d));
}

TEST_CASE("function flows need a numeric role on a known fluent") {
    auto d = validate_text(domain_with(R"(<activity id="a" name="A">)"
                                       R"(<action id="go" name="Go" stereotype="PDDL_Action"/>)"
                                       R"(<flow id="f0" kind="control" stereotype="PDDL_Predicate" name="Done" source="go"/>)"
                                       R"(<flow id="f1" kind="control" stereotype="PDDL_Function" name="Energy" source="go"/>)"
                                       R"(<flow id="f2" kind="control" stereotype="PDDL_Function" name="Wear" source="go" )"
                                       R"(effectKind="increase" fluent="fuel"/></activity>)"));
    REQUIRE(d.size() == 2);
    CHECK(d[0].rule_id == "FunctionEffectShape");
    CHECK(d[0].element_id == "f1");
    CHECK(d[1].element_id == "f2");
    CHECK_FALSE(profile::blocks_generation(d));
}

TEST_CASE("findings are in catalogue order, then document order") {
    auto d = validate_text(R"(<model name="m"><package id="p" name="D" stereotype="PDDL_Domain">)"
                           R"(<class id="t1" name="T" stereotype="PDDL_Type"/>)"
                           R"(<class id="t2" name="T" stereotype="PDDL_Type"/>)"
                           R"(<class id="u1" name="U" stereotype="PDDL_Type"/>)"
                           R"(<class id="u2" name="U" stereotype="PDDL_Type"/>)"
                           R"(<activity id="a" name="A"><action id="go" name="Go" stereotype="PDDL_Action"/>)"
                           R"(<flow id="f1" kind="object" stereotype="PDDL_Predicate" name="Done" source="go">)"
                           R"(<argument var="q"/></flow></activity></package></model>)");
    REQUIRE(d.size() == 3);
    CHECK(d[0].element_id == "t2");
    CHECK(d[1].element_id == "u2");
    CHECK(d[2].rule_id == "UnboundFlowArgument");
}

TEST_CASE("property: random valid models produce no errors") {
    mt19937 rng(5);
    for (int i = 0; i < 200; ++i) {
        ModelDocument doc = testing::random_valid_model(rng);
        auto d = profile::validate(domain_scope(doc), doc);
        INFO(format_diagnostics_text(d));
        CHECK(count_errors(d) == 0);
    }
}
