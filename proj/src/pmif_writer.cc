#include "model2plan/pmif.h"

#include <sstream>

using namespace std;

namespace model2plan::pmif {
namespace {
string escape(string_view text) {
    string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        case '\n': out += "&#10;"; break;
        case '\t': out += "&#9;"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
    return out;
}

class Writer {
    ostringstream out;
    int depth = 0;

    void indent() { out << string(2 * depth, ' '); }

    // Writes `<name a="v" ...` without closing the tag.
    void open(string_view name, const vector<pair<string_view, string>> &attributes) {
        indent();
        out << '<' << name;
        for (const auto &[key, value] : attributes)
            out << ' ' << key << "=\"" << escape(value) << '"';
    }

    void leaf(string_view name, const vector<pair<string_view, string>> &attributes) {
        open(name, attributes);
        out << "/>\n";
    }

    template<typename Body>
    void element(string_view name, const vector<pair<string_view, string>> &attributes, bool empty, Body body) {
        open(name, attributes);
        if (empty) {
            out << "/>\n";
            return;
        }
        out << ">\n";
        ++depth;
        body();
        --depth;
        indent();
        out << "</" << name << ">\n";
    }

    void arguments(const vector<string> &args) {
        for (const string &arg : args)
            leaf("argument", {{"var", arg}});
    }

    void write_action(const ir::ActionElement &action) {
        vector<pair<string_view, string>> attrs{{"id", action.id}, {"name", action.name}};
        if (action.stereotype)
            attrs.emplace_back("stereotype", string(ir::stereotype_name(*action.stereotype)));
        element("action", attrs, action.parameters.empty(), [&] {
            for (const ir::Parameter &p : action.parameters)
                leaf("parameter", {{"name", p.var}, {"type", p.type_ref}});
        });
    }

    void write_flow(const ir::FlowElement &flow) {
        vector<pair<string_view, string>> attrs{
            {"id", flow.id},
            {"kind", string(ir::flow_kind_name(flow.kind))},
            {"stereotype", string(ir::stereotype_name(flow.stereotype))},
            {"name", flow.name}};
        if (flow.source)
            attrs.emplace_back("source", *flow.source);
        if (flow.target)
            attrs.emplace_back("target", *flow.target);
        if (flow.negated)
            attrs.emplace_back("negated", "true");
        if (flow.numeric_role) {
            attrs.emplace_back("effectKind", string(ir::numeric_effect_name(flow.numeric_role->kind)));
            attrs.emplace_back("fluent", flow.numeric_role->fluent);
        }
        element("flow", attrs, flow.arguments.empty(), [&] { arguments(flow.arguments); });
    }

    void write_package(const ir::PackageElement &package) {
        vector<pair<string_view, string>> attrs{{"id", package.id}, {"name", package.name}};
        if (package.stereotype)
            attrs.emplace_back("stereotype", string(ir::stereotype_name(*package.stereotype)));
        bool empty = package.classes.empty() && package.activities.empty();
        element("package", attrs, empty, [&] {
            for (const ir::ClassElement &cls : package.classes) {
                vector<pair<string_view, string>> c{{"id", cls.id}, {"name", cls.name}};
                if (cls.stereotype)
                    c.emplace_back("stereotype", string(ir::stereotype_name(*cls.stereotype)));
                if (cls.general)
                    c.emplace_back("general", *cls.general);
                leaf("class", c);
            }
            for (const ir::Activity &activity : package.activities) {
                vector<pair<string_view, string>> a;
                if (!activity.id.empty())
                    a.emplace_back("id", activity.id);
                if (!activity.name.empty())
                    a.emplace_back("name", activity.name);
                element("activity", a, activity.actions.empty() && activity.flows.empty(), [&] {
                    for (const ir::ActionElement &action : activity.actions)
                        write_action(action);
                    for (const ir::FlowElement &flow : activity.flows)
                        write_flow(flow);
                });
            }
        });
    }

    void write_fact(const ir::FactSpec &fact) {
        vector<pair<string_view, string>> attrs{{"name", fact.name}};
        if (fact.negated)
            attrs.emplace_back("negated", "true");
        element("fact", attrs, fact.arguments.empty(), [&] { arguments(fact.arguments); });
    }

    void write_instances(const ir::InstanceData &data) {
        element("instances", {{"problem", data.problem_name}, {"domain", data.domain_ref}}, false, [&] {
            for (const ir::InstanceObject &object : data.objects)
                leaf("object", {{"name", object.name}, {"type", object.type_ref}});
            if (!data.init_facts.empty() || !data.init_fluents.empty()) {
                element("init", {}, false, [&] {
                    for (const ir::FactSpec &fact : data.init_facts)
                        write_fact(fact);
                    for (const ir::FluentSpec &fluent : data.init_fluents) {
                        element("fluent", {{"name", fluent.name}, {"value", fluent.value.to_string()}},
                                fluent.arguments.empty(), [&] { arguments(fluent.arguments); });
                    }
                });
            }
            if (!data.goal_facts.empty()) {
                element("goal", {}, false, [&] {
                    for (const ir::FactSpec &fact : data.goal_facts)
                        write_fact(fact);
                });
            }
            if (data.metric)
                leaf("metric", {{"direction", string(ir::metric_direction_name(data.metric->direction))},
                                {"fluent", data.metric->fluent}});
        });
    }

public:
    string write(const ir::ModelDocument &document) {
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        bool empty = document.packages.empty() && document.instances.empty();
        element("model", {{"xmlns", string(xml_namespace)}, {"name", document.name}}, empty, [&] {
            for (const ir::PackageElement &package : document.packages)
                write_package(package);
            for (const ir::InstanceData &data : document.instances)
                write_instances(data);
        });
        return out.str();
    }
};
}

string write_pmif(const ir::ModelDocument &document) {
    return Writer().write(document);
}

}
