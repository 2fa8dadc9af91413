#include "model2plan/pddl.h"

#include "model2plan/diagnostic.h"
#include "model2plan/names.h"

#include <cctype>
#include <set>

using namespace std;

namespace model2plan::pddl {
namespace {
struct SExpr {
    bool is_list = false;
    string symbol;
    vector<SExpr> items;
    int line = 0;
    int column = 0;

    bool is_symbol() const { return !is_list; }
    bool is_keyword(string_view keyword) const { return !is_list && iequals(symbol, keyword); }
    // Lower-cased head symbol of a list, or "".
    string head() const {
        if (!is_list || items.empty() || items[0].is_list)
            return "";
        return to_lower(items[0].symbol);
    }
};

[[noreturn]] void fail(const SExpr &at, string message, ErrorCode code = ErrorCode::SyntaxError) {
    string rule(error_code_name(code));
    message += " at line " + to_string(at.line) + ", column " + to_string(at.column);
    throw Error(code, vector<Diagnostic>{{Severity::Error, rule, "pddl", message, at.line, at.column}});
}

[[noreturn]] void unsupported(const SExpr &at, const string &feature) {
    fail(at, "unsupported PDDL feature '" + feature + "'", ErrorCode::UnsupportedFeature);
}

class Reader {
    string_view text;
    size_t pos = 0;
    int line = 1;
    int column = 1;

    void advance() {
        if (text[pos] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++pos;
    }

    void skip_blank() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {
                while (pos < text.size() && text[pos] != '\n')
                    advance();
            } else if (isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr here() const {
        SExpr e;
        e.line = line;
        e.column = column;
        return e;
    }

    SExpr read_expr() {
        skip_blank();
        SExpr e = here();
        if (pos >= text.size())
            fail(e, "unexpected end of input");
        char c = text[pos];
        if (c == ')')
            fail(e, "unexpected ')'");
        if (c == '(') {
            advance();
            e.is_list = true;
            for (;;) {
                skip_blank();
                if (pos >= text.size())
                    fail(e, "unterminated '(' opened");
                if (text[pos] == ')') {
                    advance();
                    return e;
                }
                e.items.push_back(read_expr());
            }
        }
        size_t start = pos;
        while (pos < text.size() && !isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '(' &&
               text[pos] != ')' && text[pos] != ';')
            advance();
        e.symbol = string(text.substr(start, pos - start));
        return e;
    }

public:
    explicit Reader(string_view text) : text(text) {}

    SExpr read_document() {
        SExpr e = read_expr();
        skip_blank();
        if (pos < text.size())
            fail(here(), "trailing content after the definition");
        return e;
    }
};

const SExpr &symbol_at(const SExpr &list, size_t index, string_view what) {
    if (index >= list.items.size())
        fail(list, "missing " + string(what));
    const SExpr &item = list.items[index];
    if (item.is_list)
        fail(item, "expected " + string(what) + ", found a list");
    return item;
}

string name_of(const SExpr &e, string_view what) {
    if (e.is_list)
        fail(e, "expected " + string(what) + ", found a list");
    if (!is_pddl_name(e.symbol))
        fail(e, "'" + e.symbol + "' is not a valid " + string(what));
    return e.symbol;
}

string variable_of(const SExpr &e) {
    if (e.is_list || e.symbol.size() < 2 || e.symbol[0] != '?' || !is_pddl_name(string_view(e.symbol).substr(1)))
        fail(e, "expected a variable, found '" + (e.is_list ? string("(...)") : e.symbol) + "'");
    return e.symbol.substr(1);
}

// `a b - t c - u d` -> typed names; untyped trailing names are objects.
vector<TypedName> typed_list(const SExpr &list, size_t from, bool variables) {
    vector<TypedName> result;
    size_t pending = 0;
    for (size_t i = from; i < list.items.size(); ++i) {
        const SExpr &item = list.items[i];
        if (item.is_keyword("-")) {
            if (pending == 0)
                fail(item, "'-' without preceding names");
            if (i + 1 >= list.items.size())
                fail(item, "missing type after '-'");
            const SExpr &type = list.items[i + 1];
            if (type.is_list) {
                if (type.head() == "either")
                    unsupported(type, "either");
                fail(type, "expected a type name");
            }
            string type_name = name_of(type, "type name");
            for (size_t k = result.size() - pending; k < result.size(); ++k)
                result[k].type = type_name;
            pending = 0;
            ++i;
            continue;
        }
        TypedName entry;
        entry.name = variables ? variable_of(item) : name_of(item, "name");
        result.push_back(std::move(entry));
        ++pending;
    }
    return result;
}

Atom parse_atom(const SExpr &e, bool allow_variables) {
    if (!e.is_list || e.items.empty())
        fail(e, "expected an atom");
    Atom atom;
    atom.name = name_of(e.items[0], "predicate name");
    for (size_t i = 1; i < e.items.size(); ++i) {
        const SExpr &arg = e.items[i];
        if (arg.is_list)
            fail(arg, "nested terms are not supported in atoms");
        if (!arg.symbol.empty() && arg.symbol[0] == '?') {
            if (!allow_variables)
                fail(arg, "variable '" + arg.symbol + "' in a ground context");
            atom.args.push_back(Term::variable(variable_of(arg)));
        } else {
            atom.args.push_back(Term::constant(name_of(arg, "constant")));
        }
    }
    return atom;
}

void reject_condition_feature(const SExpr &e) {
    string head = e.head();
    if (head == "or" || head == "imply" || head == "forall" || head == "exists" || head == "when" ||
        head == "preference")
        unsupported(e, head);
    if (head == "=")
        unsupported(e, "equality");
    if (head == "<" || head == ">" || head == "<=" || head == ">=")
        unsupported(e, "numeric-conditions");
}

// Flattens nested conjunctions into `out`.
void collect_literals(const SExpr &e, bool allow_variables, vector<Literal> &out) {
    if (!e.is_list)
        fail(e, "expected a condition, found '" + e.symbol + "'");
    if (e.items.empty())
        return;
    reject_condition_feature(e);
    string head = e.head();
    if (head == "and") {
        for (size_t i = 1; i < e.items.size(); ++i)
            collect_literals(e.items[i], allow_variables, out);
        return;
    }
    if (head == "not") {
        if (e.items.size() != 2)
            fail(e, "'not' takes exactly one argument");
        const SExpr &inner = e.items[1];
        if (inner.is_list && !inner.items.empty()) {
            reject_condition_feature(inner);
            if (inner.head() == "and" || inner.head() == "not")
                unsupported(inner, "negation of non-atomic formulas");
        }
        out.push_back({parse_atom(inner, allow_variables), true, {}});
        return;
    }
    out.push_back({parse_atom(e, allow_variables), false, {}});
}

Formula parse_formula(const SExpr &e, bool allow_variables) {
    vector<Literal> literals;
    collect_literals(e, allow_variables, literals);
    Formula f;
    f.conjunction = !(e.is_list && !e.items.empty() && e.head() != "and");
    f.literals = std::move(literals);
    return f;
}

void collect_effects(const SExpr &e, vector<EffectItem> &out) {
    if (!e.is_list)
        fail(e, "expected an effect, found '" + e.symbol + "'");
    if (e.items.empty())
        return;
    string head = e.head();
    if (head == "and") {
        for (size_t i = 1; i < e.items.size(); ++i)
            collect_effects(e.items[i], out);
        return;
    }
    if (head == "when")
        unsupported(e, "conditional-effects");
    if (head == "forall")
        unsupported(e, "forall");
    if (head == "scale-up" || head == "scale-down")
        unsupported(e, head);
    if (head == "increase" || head == "decrease" || head == "assign") {
        if (e.items.size() != 3)
            fail(e, "'" + head + "' takes a fluent and a value");
        NumericChange change;
        change.kind = head == "increase" ? NumericKind::Increase
                      : head == "decrease" ? NumericKind::Decrease
                                           : NumericKind::Assign;
        change.fluent = parse_atom(e.items[1], true);
        const SExpr &value = e.items[2];
        if (value.is_list) {
            string vh = value.head();
            if (vh == "+" || vh == "-" || vh == "*" || vh == "/")
                unsupported(value, "numeric-expressions");
            change.value = parse_atom(value, true);
        } else if (auto number = Rational::parse(value.symbol)) {
            change.value = *number;
        } else {
            fail(value, "expected a number or a fluent, found '" + value.symbol + "'");
        }
        for (const EffectItem &existing : out) {
            const auto *other = get_if<NumericChange>(&existing);
            if (other && other->fluent == change.fluent)
                fail(e, "more than one numeric effect on " + format_atom(change.fluent));
        }
        out.push_back(std::move(change));
        return;
    }
    if (head == "not") {
        if (e.items.size() != 2)
            fail(e, "'not' takes exactly one argument");
        out.push_back(Literal{parse_atom(e.items[1], true), true, {}});
        return;
    }
    reject_condition_feature(e);
    out.push_back(Literal{parse_atom(e, true), false, {}});
}

Effect parse_effect(const SExpr &e) {
    vector<EffectItem> items;
    collect_effects(e, items);
    Effect effect;
    effect.conjunction = !(e.is_list && !e.items.empty() && e.head() != "and");
    effect.items = std::move(items);
    return effect;
}

const set<string> supported_requirements{":strips", ":typing", ":negative-preconditions", ":action-costs"};

void check_header(const SExpr &root, string_view kind, string &name) {
    if (!root.is_list || root.head() != "define")
        fail(root, "expected (define ...)");
    if (root.items.size() < 2 || !root.items[1].is_list || root.items[1].head() != kind ||
        root.items[1].items.size() != 2)
        fail(root.items.size() > 1 ? root.items[1] : root, "expected (" + string(kind) + " <name>)");
    name = name_of(root.items[1].items[1], string(kind) + " name");
}

template<typename T>
void reject_duplicate(const vector<T> &items, const SExpr &at, const string &name, string_view what) {
    for (const T &item : items) {
        if (iequals(item.name, name))
            fail(at, "duplicate " + string(what) + " '" + name + "'");
    }
}

Action parse_action(const SExpr &e) {
    Action action;
    action.name = name_of(symbol_at(e, 1, "action name"), "action name");
    set<string> seen;
    for (size_t i = 2; i < e.items.size(); i += 2) {
        const SExpr &key = e.items[i];
        if (key.is_list)
            fail(key, "expected :parameters, :precondition or :effect");
        string k = to_lower(key.symbol);
        if (i + 1 >= e.items.size())
            fail(key, "missing value for " + key.symbol);
        if (!seen.insert(k).second)
            fail(key, "repeated " + key.symbol);
        const SExpr &value = e.items[i + 1];
        if (k == ":parameters") {
            if (!value.is_list)
                fail(value, "expected a parameter list");
            action.parameters = typed_list(value, 0, true);
            set<string> names;
            for (const TypedName &p : action.parameters) {
                if (!names.insert(to_lower(p.name)).second)
                    fail(value, "duplicate parameter ?" + p.name);
            }
        } else if (k == ":precondition") {
            action.precondition = parse_formula(value, true);
        } else if (k == ":effect") {
            action.effect = parse_effect(value);
        } else {
            fail(key, "unknown action key " + key.symbol);
        }
    }
    return action;
}

void parse_types(const SExpr &section, Domain &domain) {
    vector<TypedName> entries = typed_list(section, 1, false);
    for (const TypedName &entry : entries) {
        if (iequals(entry.name, object_type)) {
            if (!iequals(entry.type, object_type))
                fail(section, "type 'object' cannot have a parent");
            continue;
        }
        reject_duplicate(domain.types, section, entry.name, "type");
        domain.types.push_back({entry.name, entry.type, {}});
    }
    // Parents only mentioned after '-' are declared implicitly under object.
    for (size_t i = 0; i < domain.types.size(); ++i) {
        const string parent = domain.types[i].parent;
        if (!iequals(parent, object_type) && !domain.find_type(parent))
            domain.types.push_back({parent, string(object_type), {}});
    }
    for (const TypeDecl &type : domain.types) {
        string current = type.parent;
        for (size_t steps = 0; !iequals(current, object_type); ++steps) {
            if (steps > domain.types.size() || iequals(current, type.name))
                fail(section, "cyclic type hierarchy involving '" + type.name + "'");
            current = domain.find_type(current)->parent;
        }
    }
}

Signature parse_signature(const SExpr &e, string_view what) {
    if (!e.is_list || e.items.empty())
        fail(e, "expected a " + string(what) + " declaration");
    Signature s;
    s.name = name_of(e.items[0], string(what) + " name");
    s.parameters = typed_list(e, 1, true);
    return s;
}
}

Domain parse_domain(string_view text) {
    SExpr root = Reader(text).read_document();
    Domain domain;
    check_header(root, "domain", domain.name);
    for (size_t i = 2; i < root.items.size(); ++i) {
        const SExpr &section = root.items[i];
        if (!section.is_list || section.items.empty() || section.items[0].is_list)
            fail(section, "expected a domain section");
        string head = section.head();
        if (head == ":requirements") {
            for (size_t k = 1; k < section.items.size(); ++k) {
                const SExpr &key = symbol_at(section, k, "requirement");
                string lower = to_lower(key.symbol);
                if (!supported_requirements.count(lower))
                    unsupported(key, key.symbol.substr(key.symbol[0] == ':' ? 1 : 0));
                domain.requirements.push_back(key.symbol);
            }
        } else if (head == ":types") {
            parse_types(section, domain);
        } else if (head == ":predicates") {
            for (size_t k = 1; k < section.items.size(); ++k) {
                Signature s = parse_signature(section.items[k], "predicate");
                reject_duplicate(domain.predicates, section.items[k], s.name, "predicate");
                domain.predicates.push_back(std::move(s));
            }
        } else if (head == ":functions") {
            for (size_t k = 1; k < section.items.size(); ++k) {
                const SExpr &item = section.items[k];
                if (item.is_keyword("-")) {
                    if (k + 1 >= section.items.size() || !section.items[k + 1].is_keyword("number"))
                        unsupported(item, "object-fluents");
                    ++k;
                    continue;
                }
                Signature s = parse_signature(item, "function");
                reject_duplicate(domain.functions, item, s.name, "function");
                domain.functions.push_back(std::move(s));
            }
        } else if (head == ":action") {
            Action action = parse_action(section);
            reject_duplicate(domain.actions, section, action.name, "action");
            domain.actions.push_back(std::move(action));
        } else if (head == ":durative-action") {
            unsupported(section, "durative-action");
        } else if (head == ":derived") {
            unsupported(section, "derived");
        } else if (head == ":constants") {
            unsupported(section, "constants");
        } else if (head == ":constraints") {
            unsupported(section, "constraints");
        } else {
            fail(section, "unknown domain section '" + section.items[0].symbol + "'");
        }
    }
    for (const Signature &f : domain.functions) {
        if (domain.find_predicate(f.name))
            throw Error(ErrorCode::SyntaxError, "'" + f.name + "' declared both as predicate and function");
    }
    return domain;
}

Problem parse_problem(string_view text) {
    SExpr root = Reader(text).read_document();
    Problem problem;
    check_header(root, "problem", problem.name);
    bool seen_domain = false;
    for (size_t i = 2; i < root.items.size(); ++i) {
        const SExpr &section = root.items[i];
        if (!section.is_list || section.items.empty() || section.items[0].is_list)
            fail(section, "expected a problem section");
        string head = section.head();
        if (head == ":domain") {
            problem.domain_name = name_of(symbol_at(section, 1, "domain name"), "domain name");
            seen_domain = true;
        } else if (head == ":requirements") {
            for (size_t k = 1; k < section.items.size(); ++k) {
                const SExpr &key = symbol_at(section, k, "requirement");
                if (!supported_requirements.count(to_lower(key.symbol)))
                    unsupported(key, key.symbol.substr(key.symbol[0] == ':' ? 1 : 0));
            }
        } else if (head == ":objects") {
            for (TypedName &object : typed_list(section, 1, false)) {
                reject_duplicate(problem.objects, section, object.name, "object");
                problem.objects.push_back(std::move(object));
            }
        } else if (head == ":init") {
            for (size_t k = 1; k < section.items.size(); ++k) {
                const SExpr &item = section.items[k];
                string ih = item.head();
                if (ih == "=") {
                    if (item.items.size() != 3 || item.items[2].is_list)
                        fail(item, "expected (= (<fluent> ...) <number>)");
                    auto value = Rational::parse(item.items[2].symbol);
                    if (!value)
                        fail(item.items[2], "expected a number, found '" + item.items[2].symbol + "'");
                    problem.init_fluents.push_back({parse_atom(item.items[1], false), *value});
                } else if (ih == "at") {
                    unsupported(item, "timed-initial-literals");
                } else if (ih == "not") {
                    fail(item, "negative literals are not allowed in :init");
                } else {
                    problem.init.push_back(parse_atom(item, false));
                }
            }
        } else if (head == ":goal") {
            if (section.items.size() != 2)
                fail(section, "expected (:goal <formula>)");
            problem.goal = parse_formula(section.items[1], false);
        } else if (head == ":metric") {
            if (section.items.size() != 3)
                fail(section, "expected (:metric minimize|maximize <fluent>)");
            Metric metric;
            const SExpr &direction = section.items[1];
            if (direction.is_keyword("minimize"))
                metric.direction = MetricDirection::Minimize;
            else if (direction.is_keyword("maximize"))
                metric.direction = MetricDirection::Maximize;
            else
                fail(direction, "metric direction must be minimize or maximize");
            const SExpr &expr = section.items[2];
            if (expr.is_list) {
                string eh = expr.head();
                if (eh == "+" || eh == "-" || eh == "*" || eh == "/")
                    unsupported(expr, "numeric-expressions");
            }
            metric.fluent = parse_atom(expr, false);
            problem.metric = metric;
        } else if (head == ":constraints") {
            unsupported(section, "constraints");
        } else {
            fail(section, "unknown problem section '" + section.items[0].symbol + "'");
        }
    }
    if (!seen_domain)
        fail(root, "problem without (:domain ...)");
    return problem;
}

}
