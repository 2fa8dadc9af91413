#include "model2plan/pmif.h"

#include <expat.h>

#include <fstream>
#include <memory>
#include <set>
#include <sstream>

using namespace std;

namespace model2plan::pmif {
namespace {
struct XmlNode {
    string name;
    vector<pair<string, string>> attributes;
    vector<unique_ptr<XmlNode>> children;
    int line = 0;
    int column = 0;

    const string *attribute(string_view key) const {
        for (const auto &[k, v] : attributes) {
            if (k == key)
                return &v;
        }
        return nullptr;
    }
};

string at(int line, int column) {
    return "line " + to_string(line) + ", column " + to_string(column);
}

/*
  Builds a small element tree with expat. Character data is only allowed to
  be whitespace; DOCTYPE declarations are rejected.
*/
class TreeBuilder {
    XML_Parser parser;
    unique_ptr<XmlNode> root;
    vector<XmlNode *> stack;
    vector<Diagnostic> &diagnostics;

    int line() const { return static_cast<int>(XML_GetCurrentLineNumber(parser)); }
    int column() const { return static_cast<int>(XML_GetCurrentColumnNumber(parser)) + 1; }

    static void on_start(void *data, const XML_Char *name, const XML_Char **attrs) {
        auto *self = static_cast<TreeBuilder *>(data);
        auto node = make_unique<XmlNode>();
        node->name = name;
        node->line = self->line();
        node->column = self->column();
        for (int i = 0; attrs[i]; i += 2)
            node->attributes.emplace_back(attrs[i], attrs[i + 1]);
        XmlNode *raw = node.get();
        if (self->stack.empty())
            self->root = std::move(node);
        else
            self->stack.back()->children.push_back(std::move(node));
        self->stack.push_back(raw);
    }

    static void on_end(void *data, const XML_Char *) {
        static_cast<TreeBuilder *>(data)->stack.pop_back();
    }

    static void on_text(void *data, const XML_Char *text, int length) {
        auto *self = static_cast<TreeBuilder *>(data);
        for (int i = 0; i < length; ++i) {
            char c = text[i];
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
                int l = self->line(), col = self->column();
                self->diagnostics.push_back(
                    {Severity::Error, "SchemaViolation",
                     self->stack.empty() ? "model" : self->stack.back()->name,
                     "unexpected text content at " + at(l, col), l, col});
                XML_StopParser(self->parser, XML_FALSE);
                return;
            }
        }
    }

    static void on_doctype(void *data, const XML_Char *, const XML_Char *, const XML_Char *, int) {
        auto *self = static_cast<TreeBuilder *>(data);
        int l = self->line(), col = self->column();
        self->diagnostics.push_back({Severity::Error, "XmlSyntax", "model",
                                     "DOCTYPE declarations are not allowed at " + at(l, col), l, col});
        XML_StopParser(self->parser, XML_FALSE);
    }

public:
    explicit TreeBuilder(vector<Diagnostic> &diagnostics)
        : parser(XML_ParserCreate("UTF-8")), diagnostics(diagnostics) {
        XML_SetUserData(parser, this);
        XML_SetElementHandler(parser, &on_start, &on_end);
        XML_SetCharacterDataHandler(parser, &on_text);
        XML_SetStartDoctypeDeclHandler(parser, &on_doctype);
    }

    ~TreeBuilder() { XML_ParserFree(parser); }
    TreeBuilder(const TreeBuilder &) = delete;
    TreeBuilder &operator=(const TreeBuilder &) = delete;

    unique_ptr<XmlNode> build(string_view text) {
        size_t before = diagnostics.size();
        XML_Status status = XML_Parse(parser, text.data(), static_cast<int>(text.size()), XML_TRUE);
        if (status == XML_STATUS_ERROR && diagnostics.size() == before) {
            int l = line(), col = column();
            diagnostics.push_back({Severity::Error, "XmlSyntax", "model",
                                   string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser)) +
                                   " at " + at(l, col),
                                   l, col});
        }
        if (diagnostics.size() != before)
            return nullptr;
        return std::move(root);
    }
};

class SchemaReader {
    vector<Diagnostic> &diagnostics;
    ir::SourceLocations locations;

    void error(const XmlNode &node, const string &message, string rule = "SchemaViolation") {
        const string *id = node.attribute("id");
        string element = id && ir::is_valid_element_id(*id) ? *id : node.name;
        diagnostics.push_back({Severity::Error, std::move(rule), element,
                               message + " at " + at(node.line, node.column), node.line, node.column});
    }

    // Rejects attributes outside `allowed`.
    void check_attributes(const XmlNode &node, initializer_list<string_view> allowed) {
        for (const auto &[key, value] : node.attributes) {
            bool known = false;
            for (string_view a : allowed)
                known = known || key == a;
            if (!known)
                error(node, "unknown attribute '" + key + "' on <" + node.name + ">");
        }
    }

    string required(const XmlNode &node, string_view key) {
        if (const string *value = node.attribute(key))
            return *value;
        error(node, "<" + node.name + "> requires attribute '" + string(key) + "'");
        return "";
    }

    optional<string> optional_attr(const XmlNode &node, string_view key) {
        if (const string *value = node.attribute(key))
            return *value;
        return nullopt;
    }

    void no_children(const XmlNode &node) {
        for (const auto &child : node.children)
            error(*child, "unexpected element <" + child->name + "> inside <" + node.name + ">");
    }

    void unexpected(const XmlNode &parent, const XmlNode &child) {
        error(child, "unknown element <" + child.name + "> inside <" + parent.name + ">");
    }

    void remember(const string &id, const XmlNode &node) {
        if (!id.empty())
            locations.emplace(id, make_pair(node.line, node.column));
    }

    optional<ir::Stereotype> stereotype(const XmlNode &node) {
        const string *text = node.attribute("stereotype");
        if (!text)
            return nullopt;
        auto parsed = ir::parse_stereotype(*text);
        if (!parsed)
            error(node, "unknown stereotype '" + *text + "'");
        return parsed;
    }

    bool boolean(const XmlNode &node, string_view key) {
        const string *text = node.attribute(key);
        if (!text || *text == "false")
            return false;
        if (*text == "true")
            return true;
        error(node, "attribute '" + string(key) + "' must be 'true' or 'false', got '" + *text + "'");
        return false;
    }

    static string strip_variable(const string &var) {
        return !var.empty() && var[0] == '?' ? var.substr(1) : var;
    }

    vector<string> arguments(const XmlNode &node) {
        vector<string> result;
        for (const auto &child : node.children) {
            if (child->name != "argument") {
                unexpected(node, *child);
                continue;
            }
            check_attributes(*child, {"var"});
            no_children(*child);
            result.push_back(strip_variable(required(*child, "var")));
        }
        return result;
    }

    ir::ClassElement read_class(const XmlNode &node) {
        check_attributes(node, {"id", "name", "stereotype", "general"});
        no_children(node);
        ir::ClassElement cls;
        cls.id = required(node, "id");
        cls.name = required(node, "name");
        cls.stereotype = stereotype(node);
        cls.general = optional_attr(node, "general");
        remember(cls.id, node);
        return cls;
    }

    ir::ActionElement read_action(const XmlNode &node) {
        check_attributes(node, {"id", "name", "stereotype"});
        ir::ActionElement action;
        action.id = required(node, "id");
        action.name = required(node, "name");
        action.stereotype = stereotype(node);
        remember(action.id, node);
        for (const auto &child : node.children) {
            if (child->name != "parameter") {
                unexpected(node, *child);
                continue;
            }
            check_attributes(*child, {"name", "type"});
            no_children(*child);
            action.parameters.push_back({strip_variable(required(*child, "name")), required(*child, "type")});
        }
        return action;
    }

    ir::FlowElement read_flow(const XmlNode &node) {
        check_attributes(node, {"id", "kind", "stereotype", "name", "source", "target", "negated",
                                "effectKind", "fluent"});
        ir::FlowElement flow;
        flow.id = required(node, "id");
        remember(flow.id, node);
        string kind = required(node, "kind");
        if (kind == "object")
            flow.kind = ir::FlowKind::Object;
        else if (kind == "control")
            flow.kind = ir::FlowKind::Control;
        else if (!kind.empty())
            error(node, "flow kind must be 'object' or 'control', got '" + kind + "'");
        if (node.attribute("stereotype")) {
            if (auto s = stereotype(node))
                flow.stereotype = *s;
        } else {
            error(node, "<flow> requires attribute 'stereotype'");
        }
        flow.name = required(node, "name");
        flow.source = optional_attr(node, "source");
        flow.target = optional_attr(node, "target");
        flow.negated = boolean(node, "negated");
        auto effect_kind = optional_attr(node, "effectKind");
        auto fluent = optional_attr(node, "fluent");
        if (effect_kind || fluent) {
            if (!effect_kind || !fluent) {
                error(node, "'effectKind' and 'fluent' must be given together");
            } else if (auto parsed = ir::parse_numeric_effect(*effect_kind)) {
                flow.numeric_role = ir::NumericRole{*parsed, *fluent};
            } else {
                error(node, "effectKind must be increase, decrease or assign, got '" + *effect_kind + "'");
            }
        }
        flow.arguments = arguments(node);
        return flow;
    }

    ir::Activity read_activity(const XmlNode &node) {
        check_attributes(node, {"id", "name"});
        ir::Activity activity;
        activity.id = optional_attr(node, "id").value_or("");
        activity.name = optional_attr(node, "name").value_or("");
        remember(activity.id, node);
        for (const auto &child : node.children) {
            if (child->name == "action")
                activity.actions.push_back(read_action(*child));
            else if (child->name == "flow")
                activity.flows.push_back(read_flow(*child));
            else
                unexpected(node, *child);
        }
        return activity;
    }

    ir::PackageElement read_package(const XmlNode &node) {
        check_attributes(node, {"id", "name", "stereotype"});
        ir::PackageElement package;
        package.id = required(node, "id");
        package.name = required(node, "name");
        package.stereotype = stereotype(node);
        remember(package.id, node);
        for (const auto &child : node.children) {
            if (child->name == "class")
                package.classes.push_back(read_class(*child));
            else if (child->name == "activity")
                package.activities.push_back(read_activity(*child));
            else
                unexpected(node, *child);
        }
        return package;
    }

    ir::FactSpec read_fact(const XmlNode &node, bool allow_negated) {
        if (allow_negated)
            check_attributes(node, {"name", "negated"});
        else
            check_attributes(node, {"name"});
        ir::FactSpec fact;
        fact.name = required(node, "name");
        fact.negated = allow_negated && boolean(node, "negated");
        fact.arguments = arguments(node);
        return fact;
    }

    ir::InstanceData read_instances(const XmlNode &node) {
        check_attributes(node, {"problem", "domain"});
        ir::InstanceData data;
        data.problem_name = required(node, "problem");
        data.domain_ref = required(node, "domain");
        locations.emplace(ir::instance_element_id(data), make_pair(node.line, node.column));
        bool seen_init = false, seen_goal = false;
        for (const auto &child : node.children) {
            if (child->name == "object") {
                check_attributes(*child, {"name", "type"});
                no_children(*child);
                data.objects.push_back({required(*child, "name"), required(*child, "type")});
            } else if (child->name == "init") {
                if (seen_init)
                    error(*child, "<instances> allows a single <init>");
                seen_init = true;
                check_attributes(*child, {});
                for (const auto &item : child->children) {
                    if (item->name == "fact") {
                        data.init_facts.push_back(read_fact(*item, false));
                    } else if (item->name == "fluent") {
                        check_attributes(*item, {"name", "value"});
                        ir::FluentSpec fluent;
                        fluent.name = required(*item, "name");
                        string value = required(*item, "value");
                        auto parsed = value.find('/') == string::npos ? Rational::parse(value) : nullopt;
                        if (parsed)
                            fluent.value = *parsed;
                        else if (!value.empty())
                            error(*item, "fluent value '" + value + "' is not a decimal number");
                        fluent.arguments = arguments(*item);
                        data.init_fluents.push_back(std::move(fluent));
                    } else {
                        unexpected(*child, *item);
                    }
                }
            } else if (child->name == "goal") {
                if (seen_goal)
                    error(*child, "<instances> allows a single <goal>");
                seen_goal = true;
                check_attributes(*child, {});
                for (const auto &item : child->children) {
                    if (item->name == "fact")
                        data.goal_facts.push_back(read_fact(*item, true));
                    else
                        unexpected(*child, *item);
                }
            } else if (child->name == "metric") {
                if (data.metric)
                    error(*child, "<instances> allows a single <metric>");
                check_attributes(*child, {"direction", "fluent"});
                no_children(*child);
                ir::MetricSpec metric;
                string direction = required(*child, "direction");
                if (direction == "maximize")
                    metric.direction = ir::MetricDirection::Maximize;
                else if (direction != "minimize" && !direction.empty())
                    error(*child, "metric direction must be minimize or maximize, got '" + direction + "'");
                metric.fluent = required(*child, "fluent");
                data.metric = metric;
            } else {
                unexpected(node, *child);
            }
        }
        return data;
    }

public:
    explicit SchemaReader(vector<Diagnostic> &diagnostics) : diagnostics(diagnostics) {}

    const ir::SourceLocations &source_locations() const { return locations; }

    ir::ModelDocument read(const XmlNode &root) {
        ir::ModelDocument document;
        if (root.name != "model") {
            error(root, "root element must be <model>, got <" + root.name + ">");
            return document;
        }
        check_attributes(root, {"name", "xmlns"});
        if (const string *ns = root.attribute("xmlns"); ns && *ns != xml_namespace)
            error(root, "unexpected namespace '" + *ns + "', expected '" + string(xml_namespace) + "'");
        document.name = optional_attr(root, "name").value_or("");
        for (const auto &child : root.children) {
            if (child->name == "package")
                document.packages.push_back(read_package(*child));
            else if (child->name == "instances")
                document.instances.push_back(read_instances(*child));
            else
                unexpected(root, *child);
        }
        return document;
    }
};

ErrorCode code_for(const vector<Diagnostic> &diagnostics) {
    for (const Diagnostic &d : diagnostics) {
        if (d.rule_id == "XmlSyntax")
            return ErrorCode::XmlSyntax;
    }
    for (const Diagnostic &d : diagnostics) {
        if (d.rule_id == "DuplicateId")
            return ErrorCode::DuplicateId;
    }
    return ErrorCode::SchemaViolation;
}

// The code is chosen before the list is moved into the exception.
[[noreturn]] void fail(vector<Diagnostic> diagnostics) {
    ErrorCode code = code_for(diagnostics);
    throw Error(code, std::move(diagnostics));
}
}

ir::ModelDocument parse_pmif(string_view text) {
    vector<Diagnostic> diagnostics;
    unique_ptr<XmlNode> root = TreeBuilder(diagnostics).build(text);
    if (!root)
        fail(std::move(diagnostics));

    SchemaReader reader(diagnostics);
    ir::ModelDocument document = reader.read(*root);
    if (!diagnostics.empty())
        fail(std::move(diagnostics));

    diagnostics = ir::check_invariants(document, &reader.source_locations());
    if (!diagnostics.empty())
        fail(std::move(diagnostics));
    return document;
}

ir::ModelDocument load_pmif(const string &path) {
    ifstream in(path, ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    ostringstream buffer;
    buffer << in.rdbuf();
    return parse_pmif(buffer.str());
}

}
