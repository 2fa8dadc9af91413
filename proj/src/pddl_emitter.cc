#include "model2plan/pddl.h"

#include "model2plan/names.h"

#include <sstream>

using namespace std;

namespace model2plan::pddl {
namespace {
string format_term(const Term &term) {
    return term.is_variable ? "?" + term.name : term.name;
}

string format_change(const NumericChange &change) {
    string out = "(" + string(numeric_kind_name(change.kind)) + " " + format_atom(change.fluent) + " ";
    if (const auto *atom = get_if<Atom>(&change.value))
        out += format_atom(*atom);
    else
        out += get<Rational>(change.value).to_string();
    return out + ")";
}

class Emitter {
    ostringstream out;
    const EmitOptions &options;
    bool typed_lists = false;

    void line(int depth, string_view text) {
        out << string(2 * depth, ' ') << text << '\n';
    }

    void comments(int depth, const vector<string> &notes) {
        for (const string &note : notes)
            line(depth, "; " + note);
    }

    void annotate(int depth, const Annotation &note) {
        comments(depth, note.errors);
        if (options.trace && !note.origin.empty())
            line(depth, "; from " + note.origin);
    }

    // Consecutive items of one type share a `- type` suffix.
    string typed_list(const vector<TypedName> &items, bool variables) {
        string result;
        for (size_t i = 0; i < items.size(); ++i) {
            if (!result.empty())
                result += ' ';
            result += variables ? "?" + items[i].name : items[i].name;
            bool last_of_run = i + 1 == items.size() || items[i + 1].type != items[i].type;
            if (!last_of_run)
                continue;
            if (typed_lists || !iequals(items[i].type, object_type))
                result += " - " + items[i].type;
        }
        return result;
    }

    // Each parameter carries its own type, as in `(?a - Location ?b - Location)`.
    string parameter_list(const vector<TypedName> &params) {
        string result;
        for (const TypedName &p : params) {
            if (!result.empty())
                result += ' ';
            result += "?" + p.name;
            if (typed_lists || !iequals(p.type, object_type))
                result += " - " + p.type;
        }
        return result;
    }

    void formula_block(int depth, string_view keyword, const Formula &formula) {
        if (!formula.conjunction) {
            annotate(depth, formula.literals.front().note);
            line(depth, string(keyword) + " " + format_literal(formula.literals.front()));
            return;
        }
        line(depth, string(keyword) + " (and");
        for (const Literal &literal : formula.literals) {
            annotate(depth + 1, literal.note);
            line(depth + 1, format_literal(literal));
        }
        line(depth, ")");
    }

    static const Annotation &note_of(const EffectItem &item) {
        if (const auto *literal = get_if<Literal>(&item))
            return literal->note;
        return get<NumericChange>(item).note;
    }

    static string format_item(const EffectItem &item) {
        if (const auto *literal = get_if<Literal>(&item))
            return format_literal(*literal);
        return format_change(get<NumericChange>(item));
    }

    void effect_block(int depth, const Effect &effect) {
        if (!effect.conjunction) {
            annotate(depth, note_of(effect.items.front()));
            line(depth, ":effect " + format_item(effect.items.front()));
            return;
        }
        line(depth, ":effect (and");
        for (const EffectItem &item : effect.items) {
            annotate(depth + 1, note_of(item));
            line(depth + 1, format_item(item));
        }
        line(depth, ")");
    }

    void signatures(string_view keyword, const vector<Signature> &items) {
        if (items.empty())
            return;
        line(1, "(" + string(keyword));
        for (const Signature &s : items) {
            annotate(2, s.note);
            string params = parameter_list(s.parameters);
            line(2, "(" + s.name + (params.empty() ? "" : " " + params) + ")");
        }
        line(1, ")");
    }

    void types(const vector<TypeDecl> &decls) {
        if (decls.empty())
            return;
        line(1, "(:types");
        for (size_t i = 0; i < decls.size();) {
            size_t j = i;
            while (j < decls.size() && decls[j].parent == decls[i].parent)
                ++j;
            string names;
            for (size_t k = i; k < j; ++k) {
                annotate(2, decls[k].note);
                names += (names.empty() ? "" : " ") + decls[k].name;
            }
            line(2, names + " - " + decls[i].parent);
            i = j;
        }
        line(1, ")");
    }

    void action(const Action &a) {
        annotate(1, a.note);
        line(1, "(:action " + a.name);
        line(2, ":parameters (" + parameter_list(a.parameters) + ")");
        if (!a.precondition.empty())
            formula_block(2, ":precondition", a.precondition);
        if (!a.effect.empty())
            effect_block(2, a.effect);
        line(1, ")");
    }

    void header() {
        if (!options.header.empty())
            out << options.header << '\n';
    }

public:
    explicit Emitter(const EmitOptions &options) : options(options) {}

    string domain(const Domain &d) {
        header();
        typed_lists = !d.types.empty();
        bool has_notes = false;
        for (const auto &notes : d.section_notes)
            has_notes = has_notes || !notes.empty();
        if (d.requirements.empty() && d.types.empty() && d.predicates.empty() && d.functions.empty() &&
            d.actions.empty() && !has_notes) {
            line(0, "(define (domain " + d.name + "))");
            return out.str();
        }
        line(0, "(define (domain " + d.name + ")");
        if (!d.requirements.empty()) {
            string keys;
            for (const string &r : d.requirements)
                keys += " " + r;
            line(1, "(:requirements" + keys + ")");
        }
        comments(1, d.section_notes[static_cast<size_t>(Section::Types)]);
        types(d.types);
        comments(1, d.section_notes[static_cast<size_t>(Section::Predicates)]);
        signatures(":predicates", d.predicates);
        comments(1, d.section_notes[static_cast<size_t>(Section::Functions)]);
        signatures(":functions", d.functions);
        comments(1, d.section_notes[static_cast<size_t>(Section::Actions)]);
        for (const Action &a : d.actions)
            action(a);
        line(0, ")");
        return out.str();
    }

    string problem(const Problem &p) {
        header();
        typed_lists = false;
        for (const TypedName &object : p.objects)
            typed_lists = typed_lists || !iequals(object.type, object_type);
        line(0, "(define (problem " + p.name + ")");
        line(1, "(:domain " + p.domain_name + ")");
        if (!p.objects.empty())
            line(1, "(:objects " + typed_list(p.objects, false) + ")");
        if (!p.init.empty() || !p.init_fluents.empty()) {
            line(1, "(:init");
            for (const Atom &atom : p.init)
                line(2, format_atom(atom));
            for (const FluentInit &f : p.init_fluents)
                line(2, "(= " + format_atom(f.fluent) + " " + f.value.to_string() + ")");
            line(1, ")");
        }
        if (!p.goal.empty()) {
            string goal;
            if (!p.goal.conjunction) {
                goal = format_literal(p.goal.literals.front());
            } else {
                goal = "(and";
                for (const Literal &literal : p.goal.literals)
                    goal += " " + format_literal(literal);
                goal += ")";
            }
            line(1, "(:goal " + goal + ")");
        }
        if (p.metric) {
            string direction = p.metric->direction == MetricDirection::Minimize ? "minimize" : "maximize";
            line(1, "(:metric " + direction + " " + format_atom(p.metric->fluent) + ")");
        }
        line(0, ")");
        return out.str();
    }
};
}

string format_atom(const Atom &atom) {
    string out = "(" + atom.name;
    for (const Term &term : atom.args)
        out += " " + format_term(term);
    return out + ")";
}

string format_literal(const Literal &literal) {
    return literal.negated ? "(not " + format_atom(literal.atom) + ")" : format_atom(literal.atom);
}

string emit_domain(const Domain &domain, const EmitOptions &options) {
    return Emitter(options).domain(domain);
}

string emit_problem(const Problem &problem, const EmitOptions &options) {
    return Emitter(options).problem(problem);
}

}
