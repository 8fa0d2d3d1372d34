#include "normforge/compiler/compiler.hpp"

#include "normforge/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace normforge {

const char* to_string(FormulaNode::Kind k)
{
    switch (k) {
    case FormulaNode::Kind::And: return "and";
    case FormulaNode::Kind::Or: return "or";
    case FormulaNode::Kind::Implies: return "implies";
    case FormulaNode::Kind::Equation: return "equation";
    case FormulaNode::Kind::NonZero: return "nonzero";
    case FormulaNode::Kind::System: return "system";
    case FormulaNode::Kind::Predicate: return "predicate";
    case FormulaNode::Kind::True: return "true";
    }
    return "?";
}

std::size_t FormulaAST::universal_blocks() const
{
    std::size_t n = 0;
    for (auto& q : prefix) n += q.universal;
    return n;
}

std::string FormulaAST::prefix_string() const
{
    std::string s;
    for (auto& q : prefix) {
        if (!s.empty()) s += " ";
        s += (q.universal ? "forall " : "exists ") + q.name;
        if (q.coordinates > 1) s += "[" + std::to_string(q.coordinates) + "]";
    }
    return s;
}

namespace {

void render(const FormulaNode& n, const std::vector<std::string>& names, std::ostringstream& os)
{
    auto list = [&](const char* op) {
        os << "(";
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) os << " " << op << " ";
            render(n.children[i], names, os);
        }
        os << ")";
    };
    switch (n.kind) {
    case FormulaNode::Kind::And: list("and"); break;
    case FormulaNode::Kind::Or: list("or"); break;
    case FormulaNode::Kind::Implies: list("->"); break;
    case FormulaNode::Kind::Equation:
        if (n.polys.size() == 1) os << n.polys[0].str(names) << " = 0";
        else os << n.label << " = 0 [" << n.polys.size() << " coordinates]";
        break;
    case FormulaNode::Kind::NonZero:
        if (n.polys.size() == 1) os << n.polys[0].str(names) << " != 0";
        else os << n.label << " != 0 [" << n.polys.size() << " coordinates]";
        break;
    case FormulaNode::Kind::System:
        os << "exists-system " << n.label;
        if (n.system) os << " [" << n.system->equations.size() << " equations]";
        break;
    case FormulaNode::Kind::Predicate: os << n.label; break;
    case FormulaNode::Kind::True: os << "true"; break;
    }
}

FormulaNode node(FormulaNode::Kind k, std::string label, std::vector<FormulaNode> ch = {})
{
    FormulaNode n;
    n.kind = k;
    n.label = std::move(label);
    n.children = std::move(ch);
    return n;
}

FormulaNode predicate(std::string label, std::string description, std::shared_ptr<const FormulaAST> enc = nullptr)
{
    FormulaNode n = node(FormulaNode::Kind::Predicate, std::move(label));
    n.description = std::move(description);
    n.encoding = std::move(enc);
    return n;
}

FormulaNode equation(std::string label, std::vector<MPoly> ps)
{
    FormulaNode n = node(FormulaNode::Kind::Equation, std::move(label));
    n.polys = std::move(ps);
    return n;
}

FormulaNode nonzero(std::string label, std::vector<MPoly> ps)
{
    FormulaNode n = node(FormulaNode::Kind::NonZero, std::move(label));
    n.polys = std::move(ps);
    return n;
}

std::size_t expected_existentials(unsigned q, bool xi) { return q * q * q * q * (xi && q > 2 ? q - 1 : 1); }
std::size_t expected_equations(unsigned q, bool xi) { return q * q * q * (xi && q > 2 ? q - 1 : 1); }

struct Compiled {
    std::shared_ptr<const PolynomialSystem> sys;
    bool materialized = true;
    std::string note;
};

Compiled compile_system(const NormSystemOptions& o)
{
    Compiled c;
    try {
        c.sys = std::make_shared<PolynomialSystem>(norm_equation_system(o));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SearchExhausted) throw;
        c.materialized = false;
        c.note = e.what();
    }
    return c;
}

// Four-squares encoding of total positivity.
std::shared_ptr<const FormulaAST> four_squares(const std::string& arg)
{
    auto f = std::make_shared<FormulaAST>();
    f->variant = "omega2";
    f->q = 2;
    f->free_var = arg;
    f->registry = {arg, "S1", "S2", "S3", "S4"};
    f->prefix.push_back({false, "S1..S4", "field", 4});
    MPoly e = MPoly::var(0);
    for (std::uint32_t i = 1; i <= 4; ++i) e -= MPoly::var(i, 2);
    f->matrix = equation(arg + " - S1^2 - S2^2 - S3^2 - S4^2", {e});
    f->existential_count = 4;
    f->equation_count = 1;
    return f;
}

// R = { t ∈ B | ∀y ∈ B: t y ∈ B } with B(s) the solvability of the d/a norm equation in s.
std::shared_ptr<const FormulaAST> ring_encoding(const std::string& ring, const std::string& arg, unsigned q,
                                                bool xi, std::size_t budget)
{
    auto f = std::make_shared<FormulaAST>();
    f->variant = "ring " + ring;
    f->q = q;
    f->free_var = arg;
    NormSystemOptions o;
    o.q = q;
    o.xda = true;
    o.x = "T";
    o.y = "D";
    o.z = "A";
    o.yz_role = Variable::Role::Parameter;
    o.descend_roots_of_unity = xi;
    o.term_budget = budget;
    Compiled B = compile_system(o);
    auto member = [&](const std::string& what) {
        FormulaNode s = node(FormulaNode::Kind::System, "B(" + what + ") with T := " + what);
        s.system = B.sys;
        return s;
    };
    f->prefix.push_back({true, "y", "field", 1});
    f->matrix = node(FormulaNode::Kind::And, "",
                     {member(arg), node(FormulaNode::Kind::Implies, "", {member("y"), member(arg + "*y")})});
    f->materialized = B.materialized;
    f->existential_count = B.sys ? B.sys->count(Variable::Role::Existential) : expected_existentials(q, xi);
    f->equation_count = B.sys ? B.sys->equations.size() : expected_equations(q, xi);
    f->notes.push_back("D, A: parameters with poles of D exactly at the primes of " + ring +
                       " (order prime to q) and A a non-q-th power unit there");
    if (!B.materialized) f->notes.push_back("B-system not materialized: " + B.note);
    return f;
}

}  // namespace

std::string FormulaAST::str() const
{
    std::ostringstream os;
    render(matrix, registry, os);
    return os.str();
}

FormulaAST compile_definition(const CompileOptions& o)
{
    static const std::vector<std::string> variants{"eqA", "eqB", "eqC", "diffversion1", "diffversion2", "diffversion3"};
    if (std::find(variants.begin(), variants.end(), o.variant) == variants.end())
        fail(ErrorCode::InvalidArgument, "unknown variant '" + o.variant + "'");
    unsigned q = o.q;
    require_prime(Integer(q));
    bool diff = o.variant.rfind("diffversion", 0) == 0;
    if (o.variant == "eqC" && q == 2 && o.real_embeddings)
        fail(ErrorCode::InvalidArgument, "eqC needs q > 2 or a base field without real places");
    bool xi = o.descend_roots_of_unity && q > 2;

    FormulaAST f;
    f.variant = o.variant;
    f.q = q;
    f.free_var = "x";

    NormSystemOptions no;
    no.q = q;
    no.descend_roots_of_unity = o.descend_roots_of_unity;
    no.term_budget = o.term_budget;
    Compiled main = compile_system(no);
    f.materialized = main.materialized;
    if (main.sys) {
        f.registry = main.sys->names();
        f.existential_count = main.sys->count(Variable::Role::Existential);
        f.equation_count = main.sys->equations.size();
    } else {
        f.existential_count = expected_existentials(q, xi);
        f.equation_count = expected_equations(q, xi);
        f.notes.push_back("system not materialized (" + main.note + "); counts from the layer degrees");
    }
    std::size_t coords = xi ? q - 1 : 1;
    f.prefix.push_back({true, "c", "field", coords});
    f.prefix.push_back({true, "b", "field", coords});
    f.prefix.push_back({false, "u", "field", f.existential_count});

    auto named = [&](const std::string& k) -> std::vector<MPoly> {
        if (!main.sys) return {};
        return main.sys->named.at(k);
    };
    FormulaNode sys = node(FormulaNode::Kind::System, "N(u, c, b x^q + b^q) descended");
    sys.system = main.sys;
    FormulaNode consequent = node(FormulaNode::Kind::Or, "", {equation("b x^q + b^q", named("rhs")), sys});

    std::vector<FormulaNode> hyp;
    std::string wname = o.variant == "diffversion3" ? "w_hat" : "w";
    const std::optional<FieldElement>& wv = o.variant == "diffversion3" ? o.w_hat : o.w;
    if (!diff) {
        if (o.variant == "eqA" && !o.S.empty()) {
            std::string s;
            for (auto& p : o.S) s += (s.empty() ? "" : ",") + p;
            hyp.push_back(predicate("Theta_q(c; S={" + s + "})", "ord_P(c - 1) >= 1 at every P in S"));
        }
        hyp.push_back(predicate("Phi_q(c)", "ord(c - 1) >= 3 ord q at every factor of q"));
        if (o.variant != "eqC") {
            if (q == 2) hyp.push_back(predicate("Omega_2(c)", "c is totally positive (a sum of four squares)",
                                                four_squares("c")));
            else hyp.push_back(predicate("Omega_q(c)", "no condition for odd q"));
        }
    } else {
        std::string ring = o.variant == "diffversion3" ? "R_Q" : "R_W";
        hyp.push_back(predicate(ring + "((c - 1)/" + wname + ")",
                                "(c - 1)/" + wname + " is integral at the primes of " +
                                    (o.variant == "diffversion3" ? std::string("Q") : std::string("W")),
                                ring_encoding(ring, "(c - 1)/" + wname, q, xi, o.term_budget)));
        if (q == 2) hyp.push_back(predicate("Omega_2(c)", "c is totally positive (a sum of four squares)",
                                            four_squares("c")));
        else hyp.push_back(predicate("Omega_q(c)", "no condition for odd q"));
        if (wv) f.notes.push_back(wname + " = " + wv->str());
        else f.notes.push_back(wname + " symbolic: a field element with the prescribed divisor shape");
    }
    hyp.push_back(nonzero("c", named("C")));
    FormulaNode body = node(FormulaNode::Kind::Implies, "", {node(FormulaNode::Kind::And, "", hyp), consequent});
    std::vector<FormulaNode> top{equation("x", named("X")), body};
    if (o.variant == "diffversion2" || o.variant == "diffversion3") {
        FormulaNode rq = predicate("R_Q(x)", "x is integral at the factors of q",
                                   ring_encoding("R_Q", "x", q, xi, o.term_budget));
        top[1] = node(FormulaNode::Kind::And, "", {rq, body});
    }
    f.matrix = node(FormulaNode::Kind::Or, "", top);
    if (xi) f.notes.push_back("q-th roots of unity descended: c, b and u written in coordinates over the base");
    if (diff) f.notes.push_back("ring predicates carry their own forall y block and existential systems");
    return f;
}

std::optional<FieldElement> realize_w(const NumberField& K, unsigned q, const std::vector<PrimeIdeal>& S)
{
    std::vector<ApproxConstraint> cs;
    std::set<Integer> W{Integer(q)};
    for (auto& Q : splitting_type(K, Integer(q))) cs.push_back(ApproxConstraint::exact(Q, 3 * static_cast<long>(Q.e)));
    for (auto& P : S) {
        cs.push_back(ApproxConstraint::exact(P, 1));
        W.insert(P.p);
    }
    FieldElement t = K.one();
    try {
        t = strong_approx_element(K, cs);
    } catch (const Error&) {
        return std::nullopt;
    }
    // push every other zero below 0 by dividing by powers of its rational prime
    for (auto& P : prime_support(K, t)) {
        Ord v = valuation(K, P, t);
        if (v <= Ord(0)) continue;
        bool prescribed = false;
        for (auto& c : cs) prescribed = prescribed || c.P == P;
        if (prescribed) continue;
        if (W.count(P.p)) return std::nullopt;
        Integer pk = 1;
        long need = (v.value() + static_cast<long>(P.e) - 1) / static_cast<long>(P.e);
        for (long i = 0; i < need; ++i) pk *= P.p;
        t = t * (Rational(1) / Rational(pk));
    }
    for (auto& c : cs)
        if (!satisfies(K, c, t)) return std::nullopt;
    for (auto& P : prime_support(K, t)) {
        bool prescribed = false;
        for (auto& c : cs) prescribed = prescribed || c.P == P;
        if (!prescribed && valuation(K, P, t) > Ord(0)) return std::nullopt;
    }
    return t;
}

}  // namespace normforge
