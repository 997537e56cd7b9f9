#include "cylkit/term.hpp"

#include "cylkit/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace cylkit {

std::string index_to_string(const Index& i)
{
    if (const int* v = std::get_if<int>(&i))
        return std::to_string(*v);
    return std::get<std::string>(i);
}

namespace term {

namespace {
TermPtr make(TermKind kind, std::string name = {}, std::vector<Index> indices = {}, std::vector<TermPtr> args = {})
{
    for (const auto& a : args)
        if (!a)
            throw ValidationError("null subterm");
    return std::make_shared<const Term>(Term{kind, std::move(name), std::move(indices), std::move(args)});
}
} // namespace

TermPtr var(std::string name) { return make(TermKind::Variable, std::move(name)); }
TermPtr zero() { return make(TermKind::Zero); }
TermPtr one() { return make(TermKind::One); }
TermPtr diag(Index i, Index j) { return make(TermKind::Diagonal, {}, {std::move(i), std::move(j)}); }
TermPtr identity() { return make(TermKind::Identity); }
TermPtr constant(std::string name) { return make(TermKind::Constant, std::move(name)); }
TermPtr c(Index i, TermPtr t) { return make(TermKind::Cylindrify, {}, {std::move(i)}, {std::move(t)}); }
TermPtr q(Index i, TermPtr t) { return make(TermKind::Quasi, {}, {std::move(i)}, {std::move(t)}); }
TermPtr s(Index i, Index j, TermPtr t) { return make(TermKind::Substitute, {}, {std::move(i), std::move(j)}, {std::move(t)}); }
TermPtr sub(std::vector<Index> tau, TermPtr t) { return make(TermKind::SubstituteTau, {}, std::move(tau), {std::move(t)}); }
TermPtr p(Index i, Index j, TermPtr t) { return make(TermKind::Transpose, {}, {std::move(i), std::move(j)}, {std::move(t)}); }
TermPtr conv(TermPtr t) { return make(TermKind::Converse, {}, {}, {std::move(t)}); }
TermPtr neg(TermPtr t) { return make(TermKind::Complement, {}, {}, {std::move(t)}); }
TermPtr cset(std::vector<Index> gamma, TermPtr t) { return make(TermKind::CylindrifySet, {}, std::move(gamma), {std::move(t)}); }

TermPtr join(std::vector<TermPtr> args)
{
    if (args.empty())
        throw ValidationError("join needs at least one argument");
    return make(TermKind::Join, {}, {}, std::move(args));
}

TermPtr meet(std::vector<TermPtr> args)
{
    if (args.empty())
        throw ValidationError("meet needs at least one argument");
    return make(TermKind::Meet, {}, {}, std::move(args));
}

TermPtr compose(std::vector<TermPtr> args)
{
    if (args.size() < 2)
        throw ValidationError("composition needs at least two arguments");
    return make(TermKind::Compose, {}, {}, std::move(args));
}

TermPtr apply(std::string op, TermPtr t) { return make(TermKind::Apply, std::move(op), {}, {std::move(t)}); }

} // namespace term

// ---------------------------------------------------------------------------
// printing

namespace {

void print(const TermPtr& t, std::string& out)
{
    auto indices = [&] {
        for (const auto& i : t->indices) {
            out += ' ';
            out += index_to_string(i);
        }
    };
    auto index_list = [&] {
        out += " (";
        for (std::size_t k = 0; k < t->indices.size(); ++k) {
            if (k)
                out += ' ';
            out += index_to_string(t->indices[k]);
        }
        out += ')';
    };
    auto rest = [&] {
        for (const auto& a : t->args) {
            out += ' ';
            print(a, out);
        }
        out += ')';
    };
    switch (t->kind) {
    case TermKind::Variable: out += t->name; return;
    case TermKind::Zero: out += '0'; return;
    case TermKind::One: out += '1'; return;
    case TermKind::Identity: out += "id"; return;
    case TermKind::Diagonal:
        out += "(d";
        indices();
        out += ')';
        return;
    case TermKind::Constant: out += "(const " + t->name + ")"; return;
    case TermKind::Cylindrify: out += "(c"; indices(); rest(); return;
    case TermKind::Quasi: out += "(q"; indices(); rest(); return;
    case TermKind::Substitute: out += "(s"; indices(); rest(); return;
    case TermKind::Transpose: out += "(p"; indices(); rest(); return;
    case TermKind::SubstituteTau: out += "(sub"; index_list(); rest(); return;
    case TermKind::CylindrifySet: out += "(cg"; index_list(); rest(); return;
    case TermKind::Converse: out += "(conv"; rest(); return;
    case TermKind::Complement: out += "(-"; rest(); return;
    case TermKind::Join: out += "(+"; rest(); return;
    case TermKind::Meet: out += "(*"; rest(); return;
    case TermKind::Compose: out += "(;"; rest(); return;
    case TermKind::Apply: out += "(op " + t->name; rest(); return;
    }
}

} // namespace

std::string to_string(const TermPtr& t)
{
    std::string s;
    print(t, s);
    return s;
}

std::string to_string(const Equation& e) { return "(= " + to_string(e.lhs) + " " + to_string(e.rhs) + ")"; }

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Token {
    enum Kind { Open, Close, Atom, End } kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) { advance(); }

    TermPtr parse_term()
    {
        Token t = take();
        if (t.kind == Token::Atom)
            return atom_term(t);
        if (t.kind != Token::Open)
            fail(t, t.kind == Token::End ? "unexpected end of input" : "unexpected ')'");
        Token head = take();
        if (head.kind != Token::Atom)
            fail(head, "expected an operator name");
        const std::string& h = head.text;
        TermPtr result;
        if (h == "c" || h == "q") {
            Index i = index();
            TermPtr a = parse_term();
            result = h == "c" ? term::c(std::move(i), std::move(a)) : term::q(std::move(i), std::move(a));
        } else if (h == "s" || h == "p") {
            Index i = index();
            Index j = index();
            TermPtr a = parse_term();
            result = h == "s" ? term::s(std::move(i), std::move(j), std::move(a)) : term::p(std::move(i), std::move(j), std::move(a));
        } else if (h == "d") {
            Index i = index();
            Index j = index();
            result = term::diag(std::move(i), std::move(j));
        } else if (h == "sub" || h == "cg") {
            auto list = index_list();
            TermPtr a = parse_term();
            result = h == "sub" ? term::sub(std::move(list), std::move(a)) : term::cset(std::move(list), std::move(a));
        } else if (h == "conv") {
            result = term::conv(parse_term());
        } else if (h == "-") {
            result = term::neg(parse_term());
        } else if (h == "+" || h == "*" || h == ";") {
            std::vector<TermPtr> args;
            while (peek_.kind != Token::Close && peek_.kind != Token::End)
                args.push_back(parse_term());
            if (args.empty() || (h == ";" && args.size() < 2))
                fail(head, "too few arguments to '" + h + "'");
            result = h == "+" ? term::join(std::move(args)) : h == "*" ? term::meet(std::move(args)) : term::compose(std::move(args));
        } else if (h == "op") {
            Token name = take();
            if (name.kind != Token::Atom)
                fail(name, "expected an operator name");
            result = term::apply(name.text, parse_term());
        } else if (h == "const") {
            Token name = take();
            if (name.kind != Token::Atom)
                fail(name, "expected a constant name");
            result = term::constant(name.text);
        } else {
            fail(head, "unknown operator '" + h + "'");
        }
        expect_close();
        return result;
    }

    Equation parse_equation()
    {
        Token open = take();
        if (open.kind != Token::Open)
            fail(open, "expected '(' opening an equation");
        Token head = take();
        if (head.kind != Token::Atom || head.text != "=")
            fail(head, "expected '='");
        Equation e{parse_term(), parse_term()};
        expect_close();
        return e;
    }

    void expect_end()
    {
        if (peek_.kind != Token::End)
            fail(peek_, "trailing input");
    }

private:
    [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(msg, t.line, t.column); }

    static bool is_identifier(const std::string& s)
    {
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
            return false;
        return std::all_of(s.begin(), s.end(), [](char ch) {
            return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
        });
    }

    TermPtr atom_term(const Token& t)
    {
        if (t.text == "0")
            return term::zero();
        if (t.text == "1")
            return term::one();
        if (t.text == "id")
            return term::identity();
        if (!is_identifier(t.text))
            fail(t, "expected a variable, 0, 1 or id, got '" + t.text + "'");
        return term::var(t.text);
    }

    Index index()
    {
        Token t = take();
        if (t.kind != Token::Atom)
            fail(t, "expected an index");
        int v = 0;
        const char* b = t.text.data();
        const char* e = b + t.text.size();
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec == std::errc() && ptr == e) {
            if (v < 0)
                fail(t, "indices are non-negative");
            return v;
        }
        if (!is_identifier(t.text))
            fail(t, "expected an index, got '" + t.text + "'");
        return t.text;
    }

    std::vector<Index> index_list()
    {
        Token open = take();
        if (open.kind != Token::Open)
            fail(open, "expected '(' opening an index list");
        std::vector<Index> out;
        while (peek_.kind == Token::Atom)
            out.push_back(index());
        expect_close();
        return out;
    }

    void expect_close()
    {
        Token t = take();
        if (t.kind != Token::Close)
            fail(t, "expected ')'");
    }

    Token take()
    {
        Token t = peek_;
        advance();
        return t;
    }

    void advance()
    {
        while (pos_ < src_.size()) {
            char ch = src_[pos_];
            if (ch == ';' && pos_ + 1 < src_.size() && src_[pos_ + 1] == ';') {
                // ";;" starts a comment running to end of line
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    bump();
                continue;
            }
            if (!std::isspace(static_cast<unsigned char>(ch)))
                break;
            bump();
        }
        peek_.line = line_;
        peek_.column = col_;
        peek_.text.clear();
        if (pos_ >= src_.size()) {
            peek_.kind = Token::End;
            return;
        }
        char ch = src_[pos_];
        if (ch == '(' || ch == ')') {
            peek_.kind = ch == '(' ? Token::Open : Token::Close;
            peek_.text = ch;
            bump();
            return;
        }
        peek_.kind = Token::Atom;
        while (pos_ < src_.size() && src_[pos_] != '(' && src_[pos_] != ')' &&
               !std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            peek_.text += src_[pos_];
            bump();
        }
    }

    void bump()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token peek_{Token::End, {}, 1, 1};
};

} // namespace

TermPtr parse_term(std::string_view text)
{
    Parser p(text);
    TermPtr t = p.parse_term();
    p.expect_end();
    return t;
}

Equation parse_equation(std::string_view text)
{
    Parser p(text);
    Equation e = p.parse_equation();
    p.expect_end();
    return e;
}

// ---------------------------------------------------------------------------
// structure

bool structurally_equal(const TermPtr& a, const TermPtr& b)
{
    if (a == b)
        return true;
    if (a->kind != b->kind || a->name != b->name || a->indices != b->indices || a->args.size() != b->args.size())
        return false;
    for (std::size_t k = 0; k < a->args.size(); ++k)
        if (!structurally_equal(a->args[k], b->args[k]))
            return false;
    return true;
}

std::size_t depth(const TermPtr& t)
{
    std::size_t d = 0;
    for (const auto& a : t->args)
        d = std::max(d, depth(a));
    return d + 1;
}

namespace {

void collect_vars(const TermPtr& t, std::set<std::string>& out)
{
    if (t->kind == TermKind::Variable)
        out.insert(t->name);
    for (const auto& a : t->args)
        collect_vars(a, out);
}

void collect_indices(const TermPtr& t, std::set<Index>& out)
{
    out.insert(t->indices.begin(), t->indices.end());
    for (const auto& a : t->args)
        collect_indices(a, out);
}

const char* kind_symbol(TermKind k)
{
    switch (k) {
    case TermKind::Variable: return "var";
    case TermKind::Zero: return "0";
    case TermKind::One: return "1";
    case TermKind::Diagonal: return "d";
    case TermKind::Identity: return "id";
    case TermKind::Constant: return "const";
    case TermKind::Cylindrify: return "c";
    case TermKind::Quasi: return "q";
    case TermKind::Substitute: return "s";
    case TermKind::SubstituteTau: return "sub";
    case TermKind::Transpose: return "p";
    case TermKind::Converse: return "conv";
    case TermKind::Complement: return "-";
    case TermKind::CylindrifySet: return "cg";
    case TermKind::Join: return "+";
    case TermKind::Meet: return "*";
    case TermKind::Compose: return ";";
    case TermKind::Apply: return "op";
    }
    return "?";
}

void collect_ops(const TermPtr& t, std::map<std::string, std::size_t>& out)
{
    std::string key = kind_symbol(t->kind);
    if (t->kind == TermKind::Apply || t->kind == TermKind::Constant)
        key += ":" + t->name;
    if (t->kind != TermKind::Variable)
        ++out[key];
    for (const auto& a : t->args)
        collect_ops(a, out);
}

} // namespace

std::set<std::string> variables(const TermPtr& t)
{
    std::set<std::string> out;
    collect_vars(t, out);
    return out;
}

std::set<std::string> variables(const Equation& e)
{
    auto out = variables(e.lhs);
    collect_vars(e.rhs, out);
    return out;
}

std::set<Index> index_support(const TermPtr& t)
{
    std::set<Index> out;
    collect_indices(t, out);
    return out;
}

std::set<Index> index_support(const Equation& e)
{
    auto out = index_support(e.lhs);
    collect_indices(e.rhs, out);
    return out;
}

std::map<std::string, std::size_t> operation_multiset(const TermPtr& t)
{
    std::map<std::string, std::size_t> out;
    collect_ops(t, out);
    return out;
}

TermPtr canonical(const TermPtr& t)
{
    std::vector<TermPtr> args;
    args.reserve(t->args.size());
    for (const auto& a : t->args)
        args.push_back(canonical(a));
    std::vector<Index> indices = t->indices;
    switch (t->kind) {
    case TermKind::Diagonal:
    case TermKind::Transpose:
        if (indices[1] < indices[0])
            std::swap(indices[0], indices[1]);
        break;
    case TermKind::Join:
    case TermKind::Meet: {
        std::vector<TermPtr> flat;
        for (auto& a : args) {
            if (a->kind == t->kind)
                flat.insert(flat.end(), a->args.begin(), a->args.end());
            else
                flat.push_back(std::move(a));
        }
        std::vector<std::pair<std::string, TermPtr>> keyed;
        for (auto& a : flat)
            keyed.emplace_back(to_string(a), std::move(a));
        std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        args.clear();
        for (auto& [_, a] : keyed)
            args.push_back(std::move(a));
        break;
    }
    default:
        break;
    }
    return std::make_shared<const Term>(Term{t->kind, t->name, std::move(indices), std::move(args)});
}

Equation canonical(const Equation& e)
{
    Equation out{canonical(e.lhs), canonical(e.rhs)};
    if (to_string(out.rhs) < to_string(out.lhs))
        std::swap(out.lhs, out.rhs);
    return out;
}

// ---------------------------------------------------------------------------
// index renaming

IndexInjection::IndexInjection(std::vector<int> image, int target) : image_(std::move(image)), target_(target)
{
    std::vector<bool> used(static_cast<std::size_t>(std::max(target, 0)), false);
    for (int v : image_) {
        if (v < 0 || v >= target)
            throw ValidationError("injection maps outside its target " + std::to_string(target));
        if (used[static_cast<std::size_t>(v)])
            throw ValidationError("map is not injective: " + std::to_string(v) + " hit twice");
        used[static_cast<std::size_t>(v)] = true;
    }
}

IndexInjection IndexInjection::identity(int n)
{
    std::vector<int> image(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        image[static_cast<std::size_t>(i)] = i;
    return IndexInjection(std::move(image), n);
}

int IndexInjection::operator()(int i) const
{
    if (i < 0 || i >= domain())
        throw ValidationError("index " + std::to_string(i) + " outside the injection's domain " + std::to_string(domain()));
    return image_[static_cast<std::size_t>(i)];
}

IndexInjection IndexInjection::after(const IndexInjection& other) const
{
    if (other.target() > domain())
        throw ValidationError("injections do not compose: target " + std::to_string(other.target()) + " exceeds domain " +
                              std::to_string(domain()));
    std::vector<int> image;
    for (int v : other.image())
        image.push_back((*this)(v));
    return IndexInjection(std::move(image), target());
}

namespace {

int concrete(const Index& i)
{
    if (const int* v = std::get_if<int>(&i))
        return *v;
    throw ValidationError("index variable '" + std::get<std::string>(i) + "' has no value");
}

} // namespace

TermPtr eta_plus(const IndexInjection& eta, const TermPtr& t)
{
    std::vector<TermPtr> args;
    for (const auto& a : t->args)
        args.push_back(eta_plus(eta, a));
    std::vector<Index> indices;
    if (t->kind == TermKind::SubstituteTau) {
        std::vector<Index> tau(static_cast<std::size_t>(eta.target()));
        for (int k = 0; k < eta.target(); ++k)
            tau[static_cast<std::size_t>(k)] = k;
        for (std::size_t k = 0; k < t->indices.size(); ++k)
            tau[static_cast<std::size_t>(eta(static_cast<int>(k)))] = eta(concrete(t->indices[k]));
        indices = std::move(tau);
    } else {
        for (const auto& i : t->indices)
            indices.emplace_back(eta(concrete(i)));
        if (t->kind == TermKind::CylindrifySet)
            std::sort(indices.begin(), indices.end());
    }
    return std::make_shared<const Term>(Term{t->kind, t->name, std::move(indices), std::move(args)});
}

Equation eta_plus(const IndexInjection& eta, const Equation& e) { return {eta_plus(eta, e.lhs), eta_plus(eta, e.rhs)}; }

TermPtr bind_indices(const TermPtr& t, const std::map<Index, int>& binding)
{
    std::vector<TermPtr> args;
    for (const auto& a : t->args)
        args.push_back(bind_indices(a, binding));
    std::vector<Index> indices;
    for (const auto& i : t->indices) {
        auto it = binding.find(i);
        indices.push_back(it == binding.end() ? i : Index{it->second});
    }
    return std::make_shared<const Term>(Term{t->kind, t->name, std::move(indices), std::move(args)});
}

Equation bind_indices(const Equation& e, const std::map<Index, int>& binding)
{
    return {bind_indices(e.lhs, binding), bind_indices(e.rhs, binding)};
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

int eval_index(const Index& i)
{
    if (const int* v = std::get_if<int>(&i))
        return *v;
    throw EvaluationError("unbound index variable '" + std::get<std::string>(i) + "'");
}

const Element& named_constant(const FiniteBAO& a, const std::string& name)
{
    if (!a.has_constant(name))
        throw EvaluationError("algebra has no constant '" + name + "'");
    return a.constant(name);
}

Element named_op(const FiniteBAO& a, const std::string& name, const Element& x)
{
    if (!a.has_unary(name))
        throw EvaluationError("algebra has no operator '" + name + "'");
    return a.apply(name, x);
}

} // namespace

Element eval(const TermPtr& t, const FiniteBAO& a, const Assignment& env)
{
    switch (t->kind) {
    case TermKind::Variable: {
        auto it = env.find(t->name);
        if (it == env.end())
            throw EvaluationError("unassigned variable '" + t->name + "'");
        a.require_member(it->second);
        return it->second;
    }
    case TermKind::Zero: return a.zero();
    case TermKind::One: return a.one();
    case TermKind::Diagonal: return named_constant(a, diagonal_name(eval_index(t->indices[0]), eval_index(t->indices[1])));
    case TermKind::Identity: return named_constant(a, kIdentityName);
    case TermKind::Constant: return named_constant(a, t->name);
    case TermKind::Cylindrify: return named_op(a, cylindrifier_name(eval_index(t->indices[0])), eval(t->args[0], a, env));
    case TermKind::Quasi: return named_op(a, quasi_name(eval_index(t->indices[0])), eval(t->args[0], a, env));
    case TermKind::Substitute: {
        const int i = eval_index(t->indices[0]);
        const int j = eval_index(t->indices[1]);
        Element x = eval(t->args[0], a, env);
        if (i == j)
            return x;
        return named_op(a, cylindrifier_name(i), x & named_constant(a, diagonal_name(i, j)));
    }
    case TermKind::SubstituteTau: {
        Transformation tau;
        for (const auto& i : t->indices)
            tau.push_back(eval_index(i));
        return named_op(a, substitution_name(tau), eval(t->args[0], a, env));
    }
    case TermKind::Transpose:
        return named_op(a, transposition_name(eval_index(t->indices[0]), eval_index(t->indices[1])), eval(t->args[0], a, env));
    case TermKind::Converse: return named_op(a, kConverseName, eval(t->args[0], a, env));
    case TermKind::Complement: return ~eval(t->args[0], a, env);
    case TermKind::CylindrifySet: {
        std::vector<int> gamma;
        for (const auto& i : t->indices)
            gamma.push_back(eval_index(i));
        std::sort(gamma.begin(), gamma.end());
        gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
        Element x = eval(t->args[0], a, env);
        for (int i : gamma)
            x = named_op(a, cylindrifier_name(i), x);
        return x;
    }
    case TermKind::Join: {
        Element x = eval(t->args[0], a, env);
        for (std::size_t k = 1; k < t->args.size(); ++k)
            x |= eval(t->args[k], a, env);
        return x;
    }
    case TermKind::Meet: {
        Element x = eval(t->args[0], a, env);
        for (std::size_t k = 1; k < t->args.size(); ++k)
            x &= eval(t->args[k], a, env);
        return x;
    }
    case TermKind::Compose: {
        if (!a.has_composition())
            throw EvaluationError("algebra has no composition");
        Element x = eval(t->args[0], a, env);
        for (std::size_t k = 1; k < t->args.size(); ++k)
            x = a.compose(x, eval(t->args[k], a, env));
        return x;
    }
    case TermKind::Apply: return named_op(a, t->name, eval(t->args[0], a, env));
    }
    throw EvaluationError("unknown term kind");
}

} // namespace cylkit
