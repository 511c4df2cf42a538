#include <vicheck/formula.hh>

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

using std::string;
using std::string_view;
using std::vector;

namespace vicheck
{
    auto is_set_sort(Sort s) -> bool
    {
        return s == Sort::VertexSet || s == Sort::EdgeSet;
    }

    auto is_edge_sort(Sort s) -> bool
    {
        return s == Sort::Edge || s == Sort::EdgeSet;
    }

    auto element_sort_of(Sort set_sort) -> Sort
    {
        switch (set_sort) {
            case Sort::VertexSet: return Sort::Vertex;
            case Sort::EdgeSet: return Sort::Edge;
            default: return set_sort;
        }
    }

    auto sort_name(Sort s) -> string_view
    {
        switch (s) {
            case Sort::Vertex: return "vertex";
            case Sort::VertexSet: return "vertex-set";
            case Sort::Edge: return "edge";
            case Sort::EdgeSet: return "edge-set";
        }
        return "?";
    }

    auto make_constant(bool value) -> NodePtr
    {
        return std::make_shared<const Node>(Node{ value ? NodeKind::True : NodeKind::False, -1, -1, nullptr, nullptr });
    }

    auto make_atom(NodeKind kind, int first, int second) -> NodePtr
    {
        return std::make_shared<const Node>(Node{ kind, first, second, nullptr, nullptr });
    }

    auto make_not(NodePtr f) -> NodePtr
    {
        return std::make_shared<const Node>(Node{ NodeKind::Not, -1, -1, std::move(f), nullptr });
    }

    auto make_and(NodePtr a, NodePtr b) -> NodePtr
    {
        return std::make_shared<const Node>(Node{ NodeKind::And, -1, -1, std::move(a), std::move(b) });
    }

    auto make_or(NodePtr a, NodePtr b) -> NodePtr
    {
        return std::make_shared<const Node>(Node{ NodeKind::Or, -1, -1, std::move(a), std::move(b) });
    }

    auto make_quantifier(NodeKind kind, int slot, NodePtr body) -> NodePtr
    {
        return std::make_shared<const Node>(Node{ kind, slot, -1, std::move(body), nullptr });
    }

    auto structurally_equal(const NodePtr & a, const NodePtr & b) -> bool
    {
        if (a == b)
            return true;
        if (! a || ! b)
            return false;
        return a->kind == b->kind && a->first == b->first && a->second == b->second
            && structurally_equal(a->left, b->left) && structurally_equal(a->right, b->right);
    }

    Formula::Formula(NodePtr root, vector<Variable> variables, int free_count, bool mso2) :
        _root(std::move(root)),
        _variables(std::move(variables)),
        _free_count(free_count),
        _mso2(mso2)
    {
    }

    auto Formula::free_variables() const -> vector<Variable>
    {
        return { _variables.begin(), _variables.begin() + _free_count };
    }

    namespace
    {
        template <typename Fn_>
        auto visit(const NodePtr & n, Fn_ && fn) -> void
        {
            if (! n)
                return;
            fn(*n);
            visit(n->left, fn);
            visit(n->right, fn);
        }
    }

    auto Formula::uses_edge_sorts() const -> bool
    {
        for (auto & v : _variables)
            if (is_edge_sort(v.sort))
                return true;
        bool incident = false;
        visit(_root, [&] (const Node & n) { if (n.kind == NodeKind::Incident) incident = true; });
        return incident;
    }

    auto Formula::global_atom_bound() const -> int
    {
        int result = 0;
        visit(_root, [&] (const Node & n) { if (n.kind == NodeKind::Global) result = std::max(result, n.first + 1); });
        return result;
    }

    auto Formula::color_bound() const -> int
    {
        int result = 0;
        visit(_root, [&] (const Node & n) { if (n.kind == NodeKind::InColor) result = std::max(result, n.second + 1); });
        return result;
    }

    auto Formula::with_root(NodePtr root) const -> Formula
    {
        return Formula{ std::move(root), _variables, _free_count, _mso2 };
    }

    auto operator==(const Formula & a, const Formula & b) -> bool
    {
        return a._free_count == b._free_count && a._mso2 == b._mso2 && a._variables == b._variables
            && structurally_equal(a._root, b._root);
    }

    ParseError::ParseError(const string & message, std::size_t position) :
        FormulaError(message + " at position " + std::to_string(position)),
        _position(position)
    {
    }

    namespace
    {
        auto is_reserved(string_view name) -> bool
        {
            static const vector<string_view> keywords{ "exists", "forall", "in", "true", "false", "E", "I" };
            if (std::find(keywords.begin(), keywords.end(), name) != keywords.end())
                return true;
            if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'R')
                    && std::all_of(name.begin() + 1, name.end(), [] (char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                return true;
            return false;
        }

        auto valid_identifier(string_view name) -> bool
        {
            if (name.empty() || ! (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
                return false;
            return std::all_of(name.begin(), name.end(), [] (char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
        }
    }

    auto declare(string name, Sort sort) -> Variable
    {
        if (! valid_identifier(name) || is_reserved(name))
            throw FormulaError{ "invalid variable name '" + name + "'" };
        if (! is_set_sort(sort))
            throw FormulaError{ "free variable '" + name + "' must be set-sorted; encode a free vertex as a singleton set" };
        return Variable{ std::move(name), sort };
    }

    namespace
    {
        enum class TokenKind
        {
            Identifier,
            LeftParen,
            RightParen,
            Comma,
            Dot,
            Colon,
            Tilde,
            Ampersand,
            Bar,
            Arrow,
            DoubleArrow,
            Equals,
            End
        };

        struct Token
        {
            TokenKind kind;
            string text;
            std::size_t position;
        };

        auto tokenise(string_view text) -> vector<Token>
        {
            vector<Token> result;
            std::size_t i = 0;
            while (i < text.size()) {
                char c = text[i];
                if (std::isspace(static_cast<unsigned char>(c))) {
                    ++i;
                    continue;
                }
                if (c == '#') {
                    while (i < text.size() && text[i] != '\n')
                        ++i;
                    continue;
                }
                if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                    auto start = i;
                    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                        ++i;
                    result.push_back(Token{ TokenKind::Identifier, string(text.substr(start, i - start)), start });
                    continue;
                }
                auto single = [&] (TokenKind k, std::size_t len) {
                    result.push_back(Token{ k, string(text.substr(i, len)), i });
                    i += len;
                };
                if (text.substr(i, 3) == "<->")
                    single(TokenKind::DoubleArrow, 3);
                else if (text.substr(i, 2) == "->")
                    single(TokenKind::Arrow, 2);
                else if (c == '(')
                    single(TokenKind::LeftParen, 1);
                else if (c == ')')
                    single(TokenKind::RightParen, 1);
                else if (c == ',')
                    single(TokenKind::Comma, 1);
                else if (c == '.')
                    single(TokenKind::Dot, 1);
                else if (c == ':')
                    single(TokenKind::Colon, 1);
                else if (c == '~' || c == '!')
                    single(TokenKind::Tilde, 1);
                else if (c == '&')
                    single(TokenKind::Ampersand, 1);
                else if (c == '|')
                    single(TokenKind::Bar, 1);
                else if (c == '=')
                    single(TokenKind::Equals, 1);
                else
                    throw ParseError{ string("unexpected character '") + c + "'", i };
            }
            result.push_back(Token{ TokenKind::End, "", text.size() });
            return result;
        }

        class Parser
        {
            private:
                vector<Token> _tokens;
                std::size_t _at = 0;
                vector<Variable> _variables;
                vector<std::pair<string, int>> _scope;
                int _free_count;
                ParseOptions _options;

                auto peek() const -> const Token & { return _tokens[_at]; }

                auto accept(TokenKind k) -> bool
                {
                    if (peek().kind == k) {
                        ++_at;
                        return true;
                    }
                    return false;
                }

                auto accept_word(string_view w) -> bool
                {
                    if (peek().kind == TokenKind::Identifier && peek().text == w) {
                        ++_at;
                        return true;
                    }
                    return false;
                }

                auto expect(TokenKind k, string_view what) -> const Token &
                {
                    if (peek().kind != k)
                        throw ParseError{ "expected " + string(what) + (peek().kind == TokenKind::End ? string(", found end of input") : ", found '" + peek().text + "'"), peek().position };
                    return _tokens[_at++];
                }

                auto lookup(const Token & name) const -> int
                {
                    for (auto it = _scope.rbegin() ; it != _scope.rend() ; ++it)
                        if (it->first == name.text)
                            return it->second;
                    throw ParseError{ "unbound variable '" + name.text + "'", name.position };
                }

                auto sort_of(int slot) const -> Sort { return _variables[slot].sort; }

                auto mismatch(const Token & at, const string & what) const -> ParseError
                {
                    return ParseError{ "sort mismatch: " + what, at.position };
                }

                auto numbered(const Token & t, char prefix) const -> std::optional<int>
                {
                    if (t.kind != TokenKind::Identifier || t.text.size() < 2 || t.text[0] != prefix)
                        return std::nullopt;
                    if (! std::all_of(t.text.begin() + 1, t.text.end(), [] (char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                        return std::nullopt;
                    int value = std::stoi(t.text.substr(1));
                    if (value < 1)
                        throw ParseError{ "index in '" + t.text + "' must be at least 1", t.position };
                    return value - 1;
                }

                auto element_variable(const Token & t) -> int
                {
                    int slot = lookup(t);
                    if (is_set_sort(sort_of(slot)))
                        throw mismatch(t, "'" + t.text + "' is a set variable, expected an element");
                    return slot;
                }

                auto parse_iff() -> NodePtr
                {
                    auto left = parse_implication();
                    while (accept(TokenKind::DoubleArrow)) {
                        auto right = parse_implication();
                        left = make_or(make_and(left, right), make_and(make_not(left), make_not(right)));
                    }
                    return left;
                }

                auto parse_implication() -> NodePtr
                {
                    auto left = parse_or();
                    if (accept(TokenKind::Arrow))
                        return make_or(make_not(left), parse_implication());
                    return left;
                }

                auto parse_or() -> NodePtr
                {
                    auto left = parse_and();
                    while (accept(TokenKind::Bar))
                        left = make_or(left, parse_and());
                    return left;
                }

                auto parse_and() -> NodePtr
                {
                    auto left = parse_unary();
                    while (accept(TokenKind::Ampersand))
                        left = make_and(left, parse_unary());
                    return left;
                }

                auto parse_unary() -> NodePtr
                {
                    if (accept(TokenKind::Tilde))
                        return make_not(parse_unary());
                    if (peek().kind == TokenKind::Identifier && (peek().text == "exists" || peek().text == "forall"))
                        return parse_quantifier();
                    return parse_primary();
                }

                auto parse_quantifier() -> NodePtr
                {
                    auto kind = _tokens[_at++].text == "exists" ? NodeKind::Exists : NodeKind::Forall;
                    auto first = expect(TokenKind::Identifier, "a variable");
                    Token name = first;
                    std::optional<Sort> sort;
                    if (accept(TokenKind::Colon)) {
                        if (first.text == "e")
                            sort = Sort::Edge;
                        else if (first.text == "F")
                            sort = Sort::EdgeSet;
                        else
                            throw ParseError{ "unknown sort prefix '" + first.text + ":'", first.position };
                        if (! _options.mso2)
                            throw ParseError{ "edge-sorted variables need MSO2 mode", first.position };
                        name = expect(TokenKind::Identifier, "a variable");
                    }
                    if (! valid_identifier(name.text) || is_reserved(name.text))
                        throw ParseError{ "invalid variable name '" + name.text + "'", name.position };
                    if (! sort)
                        sort = std::isupper(static_cast<unsigned char>(name.text[0])) ? Sort::VertexSet : Sort::Vertex;
                    expect(TokenKind::Dot, "'.' after the quantified variable");

                    int slot = static_cast<int>(_variables.size());
                    _variables.push_back(Variable{ name.text, *sort });
                    _scope.emplace_back(name.text, slot);
                    auto body = parse_iff();
                    _scope.pop_back();
                    return make_quantifier(kind, slot, std::move(body));
                }

                auto parse_primary() -> NodePtr
                {
                    if (accept(TokenKind::LeftParen)) {
                        auto inner = parse_iff();
                        expect(TokenKind::RightParen, "')'");
                        return inner;
                    }
                    auto t = expect(TokenKind::Identifier, "a formula");
                    if (t.text == "true")
                        return make_constant(true);
                    if (t.text == "false")
                        return make_constant(false);
                    if (auto index = numbered(t, 'R'))
                        return make_atom(NodeKind::Global, *index);
                    if ((t.text == "E" || t.text == "I") && peek().kind == TokenKind::LeftParen) {
                        ++_at;
                        auto a = expect(TokenKind::Identifier, "a variable");
                        expect(TokenKind::Comma, "','");
                        auto b = expect(TokenKind::Identifier, "a variable");
                        expect(TokenKind::RightParen, "')'");
                        int x = element_variable(a), y = element_variable(b);
                        if (t.text == "E") {
                            if (sort_of(x) != Sort::Vertex || sort_of(y) != Sort::Vertex)
                                throw mismatch(t, "E(x,y) needs two vertex variables");
                            return make_atom(NodeKind::Adjacent, x, y);
                        }
                        if (! _options.mso2)
                            throw ParseError{ "I(x,e) needs MSO2 mode", t.position };
                        if (sort_of(x) != Sort::Vertex || sort_of(y) != Sort::Edge)
                            throw mismatch(t, "I(x,e) needs a vertex and an edge variable");
                        return make_atom(NodeKind::Incident, x, y);
                    }

                    int x = element_variable(t);
                    if (accept(TokenKind::Equals)) {
                        auto b = expect(TokenKind::Identifier, "a variable");
                        int y = element_variable(b);
                        if (sort_of(x) != sort_of(y))
                            throw mismatch(b, "cannot compare " + string(sort_name(sort_of(x))) + " with " + string(sort_name(sort_of(y))));
                        return make_atom(NodeKind::Equal, x, y);
                    }
                    if (accept_word("in")) {
                        auto b = expect(TokenKind::Identifier, "a set or color");
                        if (auto color = numbered(b, 'C')) {
                            if (sort_of(x) != Sort::Vertex)
                                throw mismatch(b, "colors contain vertices only");
                            return make_atom(NodeKind::InColor, x, *color);
                        }
                        int set = lookup(b);
                        if (! is_set_sort(sort_of(set)))
                            throw mismatch(b, "'" + b.text + "' is not a set variable");
                        if (element_sort_of(sort_of(set)) != sort_of(x))
                            throw mismatch(b, string(sort_name(sort_of(x))) + " cannot belong to a " + string(sort_name(sort_of(set))));
                        return make_atom(NodeKind::InSet, x, set);
                    }
                    throw ParseError{ "expected '=' or 'in' after '" + t.text + "'", peek().position };
                }

            public:
                Parser(string_view text, const vector<Variable> & free_variables, ParseOptions options) :
                    _tokens(tokenise(text)),
                    _free_count(static_cast<int>(free_variables.size())),
                    _options(options)
                {
                    for (auto & v : free_variables) {
                        declare(v.name, v.sort);
                        if (is_edge_sort(v.sort) && ! options.mso2)
                            throw FormulaError{ "edge-set variable '" + v.name + "' needs MSO2 mode" };
                        for (auto & w : _variables)
                            if (w.name == v.name)
                                throw FormulaError{ "duplicate free variable '" + v.name + "'" };
                        _scope.emplace_back(v.name, static_cast<int>(_variables.size()));
                        _variables.push_back(v);
                    }
                }

                auto run() -> Formula
                {
                    auto root = parse_iff();
                    if (peek().kind != TokenKind::End)
                        throw ParseError{ "unexpected '" + peek().text + "'", peek().position };
                    return Formula{ std::move(root), std::move(_variables), _free_count, _options.mso2 };
                }
        };

        auto is_atomic(const Node & n) -> bool
        {
            switch (n.kind) {
                case NodeKind::Not:
                case NodeKind::And:
                case NodeKind::Or:
                case NodeKind::Exists:
                case NodeKind::Forall:
                    return false;
                default:
                    return true;
            }
        }

        auto print_node(const Formula & f, const Node & n, string & out) -> void
        {
            auto name = [&] (int slot) -> const string & { return f.variable(slot).name; };
            auto wrapped = [&] (const NodePtr & child) {
                if (is_atomic(*child) || child->kind == NodeKind::Not)
                    print_node(f, *child, out);
                else {
                    out += '(';
                    print_node(f, *child, out);
                    out += ')';
                }
            };

            switch (n.kind) {
                case NodeKind::True: out += "true"; break;
                case NodeKind::False: out += "false"; break;
                case NodeKind::Adjacent: out += "E(" + name(n.first) + "," + name(n.second) + ")"; break;
                case NodeKind::Incident: out += "I(" + name(n.first) + "," + name(n.second) + ")"; break;
                case NodeKind::Equal: out += name(n.first) + " = " + name(n.second); break;
                case NodeKind::InSet: out += name(n.first) + " in " + name(n.second); break;
                case NodeKind::InColor: out += name(n.first) + " in C" + std::to_string(n.second + 1); break;
                case NodeKind::Global: out += "R" + std::to_string(n.first + 1); break;
                case NodeKind::Not:
                    out += '~';
                    if (is_atomic(*n.left) && (n.left->kind == NodeKind::Equal || n.left->kind == NodeKind::InSet || n.left->kind == NodeKind::InColor)) {
                        out += '(';
                        print_node(f, *n.left, out);
                        out += ')';
                    }
                    else
                        wrapped(n.left);
                    break;
                case NodeKind::And:
                case NodeKind::Or:
                    wrapped(n.left);
                    out += n.kind == NodeKind::And ? " & " : " | ";
                    wrapped(n.right);
                    break;
                case NodeKind::Exists:
                case NodeKind::Forall: {
                    out += n.kind == NodeKind::Exists ? "exists " : "forall ";
                    auto & v = f.variable(n.first);
                    if (v.sort == Sort::Edge)
                        out += "e:";
                    else if (v.sort == Sort::EdgeSet)
                        out += "F:";
                    out += v.name + ". ";
                    print_node(f, *n.left, out);
                    break;
                }
            }
        }

        auto replace_globals(const NodePtr & n, const PreEvaluation & gamma) -> NodePtr
        {
            switch (n->kind) {
                case NodeKind::Global:
                    if (n->first < 0 || static_cast<std::size_t>(n->first) >= gamma.size())
                        throw FormulaError{ "global constraint R" + std::to_string(n->first + 1) + " has no pre-evaluated value" };
                    return make_constant(gamma[static_cast<std::size_t>(n->first)]);
                case NodeKind::Not:
                    return make_not(replace_globals(n->left, gamma));
                case NodeKind::And:
                    return make_and(replace_globals(n->left, gamma), replace_globals(n->right, gamma));
                case NodeKind::Or:
                    return make_or(replace_globals(n->left, gamma), replace_globals(n->right, gamma));
                case NodeKind::Exists:
                case NodeKind::Forall:
                    return make_quantifier(n->kind, n->first, replace_globals(n->left, gamma));
                default:
                    return n;
            }
        }
    }

    auto parse(string_view text, const vector<Variable> & free_variables, ParseOptions options) -> Formula
    {
        return Parser{ text, free_variables, options }.run();
    }

    auto print(const Formula & f) -> string
    {
        string out;
        print_node(f, *f.root(), out);
        return out;
    }

    auto quantifier_count(const NodePtr & f) -> int
    {
        int result = 0;
        visit(f, [&] (const Node & n) {
            if (n.kind == NodeKind::Exists || n.kind == NodeKind::Forall)
                ++result;
        });
        return result;
    }

    auto quantifier_count(const Formula & f) -> int
    {
        return quantifier_count(f.root());
    }

    auto formula_size(const Formula & f) -> int
    {
        int result = 0;
        visit(f.root(), [&] (const Node &) { ++result; });
        return result;
    }

    auto pre_evaluate(const Formula & f, const PreEvaluation & gamma) -> Formula
    {
        return f.with_root(replace_globals(f.root(), gamma));
    }

    namespace
    {
        auto known(const Formula & f, const Node & n) -> std::optional<bool>
        {
            switch (n.kind) {
                case NodeKind::True:
                    return true;
                case NodeKind::False:
                    return false;
                case NodeKind::Not:
                    if (auto v = known(f, *n.left))
                        return ! *v;
                    return std::nullopt;
                case NodeKind::And:
                case NodeKind::Or: {
                    bool absorbing = n.kind == NodeKind::Or;
                    auto a = known(f, *n.left), b = known(f, *n.right);
                    if ((a && *a == absorbing) || (b && *b == absorbing))
                        return absorbing;
                    if (a && b)
                        return ! absorbing;
                    return std::nullopt;
                }
                case NodeKind::Exists:
                case NodeKind::Forall: {
                    auto body = known(f, *n.left);
                    if (! body || is_set_sort(f.variable(n.first).sort))
                        return body;
                    if (*body == (n.kind == NodeKind::Forall))
                        return body;
                    return std::nullopt;
                }
                default:
                    return std::nullopt;
            }
        }
    }

    auto known_value(const Formula & f) -> std::optional<bool>
    {
        return known(f, *f.root());
    }

    auto enumerate_pre_evaluations(int g) -> vector<PreEvaluation>
    {
        if (g < 0 || g > 20)
            throw FormulaError{ "unsupported number of global constraints" };
        vector<PreEvaluation> result;
        for (std::uint32_t bits = 0 ; bits < (1u << g) ; ++bits) {
            PreEvaluation gamma(static_cast<std::size_t>(g));
            for (int i = 0 ; i < g ; ++i)
                gamma[static_cast<std::size_t>(i)] = (bits >> i) & 1u;
            result.push_back(std::move(gamma));
        }
        return result;
    }
}
