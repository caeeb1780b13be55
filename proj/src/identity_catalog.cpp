#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ffhyper/errors.hpp"
#include "ffhyper/identity.hpp"

namespace ffhyper {

Char Terms::chi3() const {
  const Char c = special_char(s.field(), Special::chi3);
  return alt ? c * c : c;
}

Char Terms::chi4() const {
  const Char c = special_char(s.field(), Special::chi4);
  return alt ? c.bar() : c;
}

Char Terms::char_root(const Char& c) const {
  const Char r = char_sqrt(c);
  return alt ? r * phi() : r;
}

std::optional<Elem> Terms::root(const Elem& x) const {
  auto r = s.field().sqrt(x);
  if (r && alt) return -*r;
  return r;
}

CycValue Terms::F(std::initializer_list<Char> up, std::initializer_list<Char> low, const Elem& x) const {
  return greene_F(s, {up.begin(), up.size()}, {low.begin(), low.size()}, x);
}

CycValue Terms::Fs(std::initializer_list<Char> up, std::initializer_list<Char> low, const Elem& x) const {
  return mccarthy_F_star(s, {up.begin(), up.size()}, {low.begin(), low.size()}, x);
}

namespace {

using Tm = const Terms&;
using Pm = const Params&;
using Eval = std::function<CycValue(Tm, Pm)>;
using Pred = std::function<bool(Tm, Pm)>;

constexpr std::uint32_t kAlways = std::numeric_limits<std::uint32_t>::max();

class Builder {
 public:
  Builder(std::string id, IdentityKind kind, std::string statement) {
    d_.id = std::move(id);
    d_.kind = kind;
    d_.statement = std::move(statement);
    switch (kind) {
      case IdentityKind::lemma:
        d_.random_samples = 500;
        d_.exhaustive_up_to = kAlways;
        break;
      case IdentityKind::relation:
      case IdentityKind::transformation:
        d_.random_samples = 500;
        break;
      case IdentityKind::product:
        d_.random_samples = 200;
        break;
      case IdentityKind::value:
        d_.random_samples = 200;
        d_.exhaustive_up_to = kAlways;
        break;
    }
  }
  Builder& chars(std::vector<std::string> names) {
    d_.char_names = std::move(names);
    return *this;
  }
  Builder& args(std::vector<std::string> names) {
    d_.arg_names = std::move(names);
    return *this;
  }
  Builder& mod(std::uint32_t m, std::vector<std::uint32_t> residues) {
    d_.congruence = {m, std::move(residues)};
    return *this;
  }
  Builder& hyp(std::string name, Pred p) {
    d_.hypotheses.push_back({std::move(name), std::move(p)});
    return *this;
  }
  Builder& lhs(Eval e) {
    d_.lhs = std::move(e);
    return *this;
  }
  Builder& rhs(Eval e) {
    d_.rhs = std::move(e);
    return *this;
  }
  Builder& branch(std::function<std::string(Tm, Pm)> b) {
    d_.branch = std::move(b);
    return *this;
  }
  Builder& cost(double c) {
    d_.cost = c;
    return *this;
  }
  Builder& samples(std::size_t n) {
    d_.random_samples = n;
    return *this;
  }
  Builder& exhaustive_up_to(std::uint32_t q) {
    d_.exhaustive_up_to = q;
    return *this;
  }
  IdentityDescriptor done() { return std::move(d_); }

 private:
  IdentityDescriptor d_;
};

// Hypothesis helpers.
Pred char_nontrivial(std::function<Char(Tm, Pm)> f) {
  return [f = std::move(f)](Tm t, Pm p) { return !f(t, p).is_trivial(); };
}
Pred chars_differ(std::function<Char(Tm, Pm)> f, std::function<Char(Tm, Pm)> g) {
  return [f = std::move(f), g = std::move(g)](Tm t, Pm p) { return !(f(t, p) == g(t, p)); };
}
Pred arg_not(std::size_t i, std::int64_t num, std::int64_t den = 1) {
  return [i, num, den](Tm t, Pm p) { return !(p.args[i] * den == t.el(num)); };
}

// Order of the character group element, used by value hypotheses.
bool order_in(const Char& c, std::initializer_list<std::uint32_t> orders) {
  return std::find(orders.begin(), orders.end(), c.order()) != orders.end();
}

std::int64_t dd(const Char& c) { return Terms::d(c); }
std::int64_t sg(const Char& c) { return Terms::sgn(c); }

// ----------------------------------------------------------------------------
// Character-sum lemmas.

void add_lemmas(std::vector<IdentityDescriptor>& out) {
  out.push_back(Builder("LEMMA_PACK:g1", IdentityKind::lemma, "g(T^k) g(T^-k) = q T^k(-1) - (q-1) delta(T^k)")
                    .chars({"A"})
                    .lhs([](Tm t, Pm p) { return t.g(p.chars[0]) * t.g(bar(p.chars[0])); })
                    .rhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      return t.num(t.q * sg(a) - (t.q - 1) * dd(a));
                    })
                    .done());

  out.push_back(Builder("LEMMA_PACK:g3", IdentityKind::lemma, "1/g(A-bar) = A(-1) g(A)/q - (q-1)/q delta(A)")
                    .chars({"A"})
                    .lhs([](Tm t, Pm p) { return t.num(1) / t.g(bar(p.chars[0])); })
                    .rhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      return t.g(a) * t.frac(sg(a), t.q) - t.frac((t.q - 1) * dd(a), t.q);
                    })
                    .done());

  out.push_back(Builder("LEMMA_PACK:gj1", IdentityKind::lemma, "J(A,B) = g(A) g(B)/g(AB) + (q-1) B(-1) delta(AB)")
                    .chars({"A", "B"})
                    .lhs([](Tm t, Pm p) { return t.J(p.chars[0], p.chars[1]); })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1];
                      return t.g(a) * t.g(b) / t.g(a * b) + t.num((t.q - 1) * sg(b) * dd(a * b));
                    })
                    .done());

  out.push_back(
      Builder("LEMMA_PACK:g8", IdentityKind::lemma, "(A choose B) = B(-1) g(A) g(B-bar)/(q g(A B-bar)) + (q-1)/q delta(A B-bar)")
          .chars({"A", "B"})
          .lhs([](Tm t, Pm p) { return t.B(p.chars[0], p.chars[1]); })
          .rhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1];
            return t.g(a) * t.g(bar(b)) * sg(b) / (t.g(a * bar(b)) * t.q) + t.frac((t.q - 1) * dd(a * bar(b)), t.q);
          })
          .done());

  out.push_back(Builder("LEMMA_PACK:g5", IdentityKind::lemma, "sum over chi of chi(x) = (q-1) delta(1-x), x nonzero")
                    .args({"x"})
                    .hyp("x != 0", arg_not(0, 0))
                    .lhs([](Tm t, Pm p) {
                      CycValue acc = t.num(0);
                      for (std::uint32_t k = 0; k < t.s.m(); ++k) acc += t.chi(t.s.T(k), p.args[0]);
                      return acc;
                    })
                    .rhs([](Tm t, Pm p) { return t.num((t.q - 1) * Terms::d(1 - p.args[0])); })
                    .done());

  out.push_back(Builder("LEMMA_PACK:b5", IdentityKind::lemma, "(A choose eps) = -1/q + (q-1)/q delta(A)")
                    .chars({"A"})
                    .lhs([](Tm t, Pm p) { return t.B(p.chars[0], t.eps()); })
                    .rhs([](Tm t, Pm p) { return t.frac(-1 + (t.q - 1) * dd(p.chars[0]), t.q); })
                    .done());

  out.push_back(Builder("LEMMA_PACK:b5-diag", IdentityKind::lemma, "(A choose A) = -1/q + (q-1)/q delta(A)")
                    .chars({"A"})
                    .lhs([](Tm t, Pm p) { return t.B(p.chars[0], p.chars[0]); })
                    .rhs([](Tm t, Pm p) { return t.frac(-1 + (t.q - 1) * dd(p.chars[0]), t.q); })
                    .done());

  out.push_back(Builder("LEMMA_PACK:b7", IdentityKind::lemma, "(eps choose A) = -A(-1)/q + (q-1)/q delta(A)")
                    .chars({"A"})
                    .lhs([](Tm t, Pm p) { return t.B(t.eps(), p.chars[0]); })
                    .rhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      return t.frac(-sg(a) + (t.q - 1) * dd(a), t.q);
                    })
                    .done());

  out.push_back(
      Builder("LEMMA_PACK:b6", IdentityKind::lemma,
              "(A choose B)(C choose A) = (C choose B)(C B-bar choose A B-bar) - (q-1)/q^2 B(-1) delta(A) + (q-1)/q^2 AB(-1) delta(B C-bar)")
          .chars({"A", "B", "C"})
          .lhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
            return t.B(a, b) * t.B(c, a);
          })
          .rhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
            const std::int64_t corr = -(t.q - 1) * sg(b) * dd(a) + (t.q - 1) * sg(a * b) * dd(b * bar(c));
            return t.B(c, b) * t.B(c * bar(b), a * bar(b)) + t.frac(corr, t.q * t.q);
          })
          .done());

  out.push_back(Builder("LEMMA_PACK:DH2", IdentityKind::lemma, "g(A) g(phi A) = g(A^2) g(phi) A-bar(4)")
                    .chars({"A"})
                    .lhs([](Tm t, Pm p) { return t.g(p.chars[0]) * t.g(t.phi() * p.chars[0]); })
                    .rhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      return t.g(a * a) * t.g(t.phi()) * t.chi(bar(a), 4);
                    })
                    .done());

  out.push_back(Builder("LEMMA_PACK:DH3", IdentityKind::lemma,
                        "g(A) g(chi3 A) g(chi3^2 A) = g(A^3) g(chi3) g(chi3^2) A-bar(27)")
                    .chars({"A"})
                    .mod(3, {1})
                    .lhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      const Char c = t.chi3();
                      return t.g(a) * t.g(c * a) * t.g(c * c * a);
                    })
                    .rhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      const Char c = t.chi3();
                      return t.g(a.pow(3)) * t.g(c) * t.g(c * c) * t.chi(bar(a), 27);
                    })
                    .done());

  out.push_back(Builder("LEMMA_PACK:DH4", IdentityKind::lemma,
                        "g(A) g(chi4 A) g(phi A) g(chi4^3 A) = g(A^4) g(chi4) g(phi) g(chi4^3) A-bar(256)")
                    .chars({"A"})
                    .mod(4, {1})
                    .lhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      const Char c = t.chi4();
                      return t.g(a) * t.g(c * a) * t.g(t.phi() * a) * t.g(c.pow(3) * a);
                    })
                    .rhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      const Char c = t.chi4();
                      return t.g(a.pow(4)) * t.g(c) * t.g(t.phi()) * t.g(c.pow(3)) * t.chi(bar(a), 256);
                    })
                    .done());

  out.push_back(Builder("LEMMA_PACK:g2", IdentityKind::lemma,
                        "1/(q-1) sum g(A chi) g(B chi) g(C chi-bar) g(D chi-bar) = g(AC) g(AD) g(BC) g(BD)/g(ABCD) + q(q-1) AB(-1) delta(ABCD)")
                    .chars({"A", "B", "C", "D"})
                    .cost(1.0)
                    .samples(500)
                    .exhaustive_up_to(13)
                    .lhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2], &d = p.chars[3];
                      CycValue acc = t.num(0);
                      for (std::uint32_t k = 0; k < t.s.m(); ++k) {
                        const Char x = t.s.T(k);
                        acc += t.g(a * x) * t.g(b * x) * t.g(c * bar(x)) * t.g(d * bar(x));
                      }
                      return acc / (t.q - 1);
                    })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2], &d = p.chars[3];
                      return t.g(a * c) * t.g(a * d) * t.g(b * c) * t.g(b * d) / t.g(a * b * c * d) +
                             t.num(t.q * (t.q - 1) * sg(a * b) * dd(a * b * c * d));
                    })
                    .done());

  out.push_back(Builder("LEMMA_PACK:sq-1", IdentityKind::lemma,
                        "for A of order m > 1: A(-1) = -1 iff m is even and (q-1)/m is odd")
                    .chars({"A"})
                    .hyp("A != eps", char_nontrivial([](Tm, Pm p) { return p.chars[0]; }))
                    .lhs([](Tm t, Pm p) { return t.chi(p.chars[0], -1); })
                    .rhs([](Tm t, Pm p) { return t.num(minus_one_criterion(p.chars[0]) ? -1 : 1); })
                    .done());

  out.push_back(Builder("LEMMA_PACK:sq-2", IdentityKind::lemma, "a non-square character takes the value -1 at -1")
                    .chars({"A"})
                    .hyp("A not a square", [](Tm, Pm p) { return !p.chars[0].is_square(); })
                    .lhs([](Tm t, Pm p) { return t.chi(p.chars[0], -1); })
                    .rhs([](Tm t, Pm) { return t.num(-1); })
                    .done());
}

// ----------------------------------------------------------------------------
// Relations between normalizations, Greene's transformations and small values.

void add_greene(std::vector<IdentityDescriptor>& out) {
  out.push_back(Builder("REL_MCCARTHY", IdentityKind::relation,
                        "2F1(A,B;C|x)* = (B choose C)^-1 2F1(A,B;C|x) for A != eps, B != C")
                    .chars({"A", "B", "C"})
                    .args({"x"})
                    .hyp("A != eps", char_nontrivial([](Tm, Pm p) { return p.chars[0]; }))
                    .hyp("B != C", chars_differ([](Tm, Pm p) { return p.chars[1]; }, [](Tm, Pm p) { return p.chars[2]; }))
                    .lhs([](Tm t, Pm p) { return t.Fs({p.chars[0], p.chars[1]}, {p.chars[2]}, p.args[0]); })
                    .rhs([](Tm t, Pm p) {
                      return t.F({p.chars[0], p.chars[1]}, {p.chars[2]}, p.args[0]) / t.B(p.chars[1], p.chars[2]);
                    })
                    .done());

  out.push_back(Builder("REL_FUSELIER", IdentityKind::relation,
                        "2F1[A,B;C|x] (period normalization) = q BC(-1)/J(B, B-bar C) 2F1(A,B;C|x) + delta(x)")
                    .chars({"A", "B", "C"})
                    .args({"x"})
                    .lhs([](Tm t, Pm p) { return fuselier_F(t.s, p.chars[0], p.chars[1], p.chars[2], p.args[0]); })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      return t.F({a, b}, {c}, p.args[0]) * (t.q * sg(b * c)) / t.J(b, bar(b) * c) +
                             Terms::d(p.args[0]);
                    })
                    .done());

  out.push_back(
      Builder("GREENE_T1", IdentityKind::transformation,
              "2F1(A,B;C|x) = A(-1) 2F1(A,B;AB C-bar|1-x) + A(-1)(B choose A-bar C) delta(1-x) - (B choose C) delta(x)")
          .chars({"A", "B", "C"})
          .args({"x"})
          .lhs([](Tm t, Pm p) { return t.F({p.chars[0], p.chars[1]}, {p.chars[2]}, p.args[0]); })
          .rhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
            const Elem& x = p.args[0];
            return sg(a) * t.F({a, b}, {a * b * bar(c)}, 1 - x) + t.B(b, bar(a) * c) * (sg(a) * Terms::d(1 - x)) -
                   t.B(b, c) * Terms::d(x);
          })
          .done());

  // At x = 1 the series term carries the factor A-bar(0) (resp. B-bar(0)) = 0.
  out.push_back(Builder("GREENE_T2", IdentityKind::transformation,
                        "2F1(A,B;C|x) = C(-1) A-bar(1-x) 2F1(A, C B-bar; C | x/(x-1)) + A(-1)(B choose A-bar C) delta(1-x)")
                    .chars({"A", "B", "C"})
                    .args({"x"})
                    .lhs([](Tm t, Pm p) { return t.F({p.chars[0], p.chars[1]}, {p.chars[2]}, p.args[0]); })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem& x = p.args[0];
                      CycValue r = t.B(b, bar(a) * c) * (sg(a) * Terms::d(1 - x));
                      if (!(x == 1)) r += t.chi(bar(a), 1 - x) * sg(c) * t.F({a, c * bar(b)}, {c}, x / (x - 1));
                      return r;
                    })
                    .done());

  out.push_back(Builder("GREENE_T3", IdentityKind::transformation,
                        "2F1(A,B;C|x) = B-bar(1-x) 2F1(C A-bar, B; C | x/(x-1)) + A(-1)(B choose A-bar C) delta(1-x)")
                    .chars({"A", "B", "C"})
                    .args({"x"})
                    .lhs([](Tm t, Pm p) { return t.F({p.chars[0], p.chars[1]}, {p.chars[2]}, p.args[0]); })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem& x = p.args[0];
                      CycValue r = t.B(b, bar(a) * c) * (sg(a) * Terms::d(1 - x));
                      if (!(x == 1)) r += t.chi(bar(b), 1 - x) * t.F({c * bar(a), b}, {c}, x / (x - 1));
                      return r;
                    })
                    .done());

  out.push_back(Builder("INVERSION", IdentityKind::transformation,
                        "2F1(A,B;C|x) = BC(-1) A-bar(x) 2F1(A, A C-bar; A B-bar | 1/x) for x != 0, 1")
                    .chars({"A", "B", "C"})
                    .args({"x"})
                    .hyp("x != 0", arg_not(0, 0))
                    .hyp("x != 1", arg_not(0, 1))
                    .lhs([](Tm t, Pm p) { return t.F({p.chars[0], p.chars[1]}, {p.chars[2]}, p.args[0]); })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem& x = p.args[0];
                      return t.chi(bar(a), x) * sg(b * c) * t.F({a, a * bar(c)}, {a * bar(b)}, 1 / x);
                    })
                    .done());

  out.push_back(Builder("MC_AT_1", IdentityKind::transformation,
                        "2F1(A,B;C|1)* = g(A C-bar) g(B C-bar)/(g(C-bar) g(AB C-bar)) + q(q-1) AB(-1)/(g(A) g(B) g(C-bar)) delta(AB C-bar)")
                    .chars({"A", "B", "C"})
                    .lhs([](Tm t, Pm p) { return t.Fs({p.chars[0], p.chars[1]}, {p.chars[2]}, t.el(1)); })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      CycValue r = t.g(a * bar(c)) * t.g(b * bar(c)) / (t.g(bar(c)) * t.g(a * b * bar(c)));
                      if (dd(a * b * bar(c)))
                        r += t.num(t.q * (t.q - 1) * sg(a * b)) / (t.g(a) * t.g(b) * t.g(bar(c)));
                      return r;
                    })
                    .done());

  out.push_back(Builder("FL_VALUE", IdentityKind::value,
                        "2F1[A, A phi; phi | x] = (1 + phi(x))/2 (A-bar^2(1 + sqrt x) + A-bar^2(1 - sqrt x)), A != eps, phi")
                    .chars({"A"})
                    .args({"x"})
                    .hyp("A != eps", char_nontrivial([](Tm, Pm p) { return p.chars[0]; }))
                    .hyp("A != phi", chars_differ([](Tm, Pm p) { return p.chars[0]; }, [](Tm t, Pm) { return t.phi(); }))
                    .hyp("x != 0", arg_not(0, 0))
                    .lhs([](Tm t, Pm p) {
                      const Char& a = p.chars[0];
                      return fuselier_F(t.s, a, a * t.phi(), t.phi(), p.args[0]);
                    })
                    .rhs([](Tm t, Pm p) {
                      const Char a2b = bar(p.chars[0] * p.chars[0]);
                      const auto r = t.root(p.args[0]);
                      if (!r) return t.num(0);
                      return t.chi(a2b, 1 + *r) + t.chi(a2b, 1 - *r);
                    })
                    .branch([](Tm t, Pm p) { return t.root(p.args[0]) ? "x square" : "x non-square"; })
                    .done());

  out.push_back(Builder("G_NEG1", IdentityKind::value,
                        "2F1(A,B; A-bar B | -1) = 0 if B is not a square, (C choose A) + (phi C choose A) if B = C^2")
                    .chars({"A", "B"})
                    .lhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1];
                      return t.F({a, b}, {bar(a) * b}, t.el(-1));
                    })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1];
                      if (!b.is_square()) return t.num(0);
                      const Char c = t.char_root(b);
                      return t.B(c, a) + t.B(t.phi() * c, a);
                    })
                    .branch([](Tm, Pm p) { return p.chars[1].is_square() ? "B square" : "B non-square"; })
                    .done());

  out.push_back(Builder("G_AT2", IdentityKind::value,
                        "2F1(A,B; A^2 | 2) = A(-1) times (0 if B is not a square, (C choose A) + (phi C choose A) if B = C^2)")
                    .chars({"A", "B"})
                    .lhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1];
                      return t.F({a, b}, {a * a}, t.el(2));
                    })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1];
                      if (!b.is_square()) return t.num(0);
                      const Char c = t.char_root(b);
                      return (t.B(c, a) + t.B(t.phi() * c, a)) * sg(a);
                    })
                    .branch([](Tm, Pm p) { return p.chars[1].is_square() ? "B square" : "B non-square"; })
                    .done());
}

// ----------------------------------------------------------------------------
// Product formulas.

// AB(4) g(A-bar^2) g(AB C-bar) g(A-bar B-bar C phi) / (g(B-bar^2) g(B^2 C-bar) g(A-bar^2 C) g(phi))
CycValue mt41_factor(Tm t, const Char& a, const Char& b, const Char& c) {
  const Char a2 = a * a, b2 = b * b, ab = a * b, phi = t.phi();
  return t.chi(ab, 4) * t.g(bar(a2)) * t.g(ab * bar(c)) * t.g(bar(ab) * c * phi) /
         (t.g(bar(b2)) * t.g(b2 * bar(c)) * t.g(bar(a2) * c) * t.g(phi));
}

CycValue mt41_main(Tm t, const Char& a, const Char& b, const Char& c, const Elem& z) {
  const Char a2 = a * a, b2 = b * b, ab = a * b, phi = t.phi();
  return mt41_factor(t, a, b, c) * t.q * t.F({a2, b2, ab, ab * phi}, {a2 * b2, c, a2 * b2 * bar(c)}, z);
}

std::vector<Hypothesis> mt41_hyps() {
  return {
      {"A^2 != eps", [](Tm, Pm p) { return !(p.chars[0] * p.chars[0]).is_trivial(); }},
      {"B^2 != eps", [](Tm, Pm p) { return !(p.chars[1] * p.chars[1]).is_trivial(); }},
      {"A^2 != C", [](Tm, Pm p) { return !(p.chars[0] * p.chars[0] == p.chars[2]); }},
      {"B^2 != C", [](Tm, Pm p) { return !(p.chars[1] * p.chars[1] == p.chars[2]); }},
      {"x != 1", arg_not(0, 1)},
  };
}

std::vector<Hypothesis> mt41_cor_hyps() {
  auto h = mt41_hyps();
  h.insert(h.begin() + 2, {"A^2 B^2 != eps", [](Tm, Pm p) { return !(p.chars[0] * p.chars[1]).pow(2).is_trivial(); }});
  h.insert(h.begin() + 3, {"A^2 B^2 C-bar^2 != eps", [](Tm, Pm p) {
                             return !((p.chars[0] * p.chars[1]).pow(2) * bar(p.chars[2]).pow(2)).is_trivial();
                           }});
  h.push_back({"x != 1/2", arg_not(0, 1, 2)});
  return h;
}

void add_mt41(std::vector<IdentityDescriptor>& out) {
  Builder full("MT41", IdentityKind::product,
               "2F1(A^2,B^2;C|x) 2F1(A^2,B^2;A^2B^2 C-bar|x) as a 4F3 at 4x(1-x) plus delta-correction terms");
  full.chars({"A", "B", "C"}).args({"x"}).cost(2.0);
  for (auto& h : mt41_hyps()) full.hyp(h.name, h.holds);
  out.push_back(
      full.lhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
            const Elem& x = p.args[0];
            const Char a2 = a * a, b2 = b * b;
            return t.F({a2, b2}, {c}, x) * t.F({a2, b2}, {a2 * b2 * bar(c)}, x);
          })
          .rhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
            const Elem& x = p.args[0];
            const Char a2 = a * a, b2 = b * b, ab = a * b, phi = t.phi();
            const std::int64_t q = t.q;
            const Elem z = 4 * x * (1 - x);
            const CycValue k = mt41_factor(t, a, b, c);
            CycValue r = mt41_main(t, a, b, c, z);
            if (dd(ab * bar(c))) r -= k * (q - 1) * t.F({a2, b2, ab * phi}, {a2 * b2, a2 * b2 * bar(c)}, z);
            if (dd(bar(ab) * c * phi)) r -= k * (q - 1) * t.F({a2, b2, ab}, {a2 * b2, c}, z);
            const CycValue g4 = t.g(a2) * t.g(bar(b2)) * t.g(b2 * bar(c)) * t.g(bar(a2) * c);
            if (Terms::d((1 - 2 * x) / ((1 - x) * (1 - x))))
              r += t.chi(bar(c) * bar(a2), 1 - x) * t.chi(c * bar(b2), x) * q / g4;
            const std::int64_t br1 =
                (q - 1) * dd(ab) * dd(ab * bar(c)) - q * sg(ab) * dd(ab * bar(c)) - q * sg(ab * c) * dd(ab);
            if (br1 != 0)
              r -= t.g(a * bar(b)) * t.g(bar(a) * b) * t.chi(bar(ab), x - x * x) * ((q - 1) * br1) / (g4 * (q * q));
            const std::int64_t br2 = (q - 1) * dd(ab * bar(c) * phi) * dd(ab * phi) -
                                     q * sg(ab * phi) * dd(ab * bar(c) * phi) - q * sg(ab * c * phi) * dd(ab * phi);
            if (br2 != 0)
              r -= t.g(bar(a) * b * phi) * t.g(a * bar(b) * phi) * t.chi(bar(ab) * phi, x - x * x) * ((q - 1) * br2) /
                   (g4 * (q * q));
            return r;
          })
          .done());

  Builder cor("MT41_COR", IdentityKind::product,
              "2F1(A^2,B^2;C|x) 2F1(A^2,B^2;A^2B^2 C-bar|x) as a single 4F3 at 4x(1-x), generic parameters");
  cor.chars({"A", "B", "C"}).args({"x"}).cost(2.0);
  for (auto& h : mt41_cor_hyps()) cor.hyp(h.name, h.holds);
  out.push_back(cor.lhs([](Tm t, Pm p) {
                     const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                     const Elem& x = p.args[0];
                     const Char a2 = a * a, b2 = b * b;
                     return t.F({a2, b2}, {c}, x) * t.F({a2, b2}, {a2 * b2 * bar(c)}, x);
                   })
                    .rhs([](Tm t, Pm p) {
                      const Elem& x = p.args[0];
                      return mt41_main(t, p.chars[0], p.chars[1], p.chars[2], 4 * x * (1 - x));
                    })
                    .done());

  Builder star("MT41_COR_STAR", IdentityKind::product,
               "normalized form: 2F1(A^2,B^2;C|x)* 2F1(A^2,B^2;A^2B^2 C-bar|x)* = 4F3(...|4x(1-x))*");
  star.chars({"A", "B", "C"}).args({"x"}).cost(2.0);
  for (auto& h : mt41_cor_hyps()) star.hyp(h.name, h.holds);
  out.push_back(star.lhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem& x = p.args[0];
                      const Char a2 = a * a, b2 = b * b;
                      return t.Fs({a2, b2}, {c}, x) * t.Fs({a2, b2}, {a2 * b2 * bar(c)}, x);
                    })
                     .rhs([](Tm t, Pm p) {
                       const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                       const Elem& x = p.args[0];
                       const Char a2 = a * a, b2 = b * b, ab = a * b;
                       return t.Fs({a2, b2, ab, ab * t.phi()}, {a2 * b2, c, a2 * b2 * bar(c)}, 4 * x * (1 - x));
                     })
                     .done());

  out.push_back(
      Builder("MT41C1", IdentityKind::product,
              "2F1(A^2,B^2;AB phi|x)^2 as a 3F2 at 4x(1-x) plus correction terms")
          .chars({"A", "B"})
          .args({"x"})
          .cost(2.0)
          .hyp("A^2 != eps", [](Tm, Pm p) { return !(p.chars[0] * p.chars[0]).is_trivial(); })
          .hyp("B^2 != eps", [](Tm, Pm p) { return !(p.chars[1] * p.chars[1]).is_trivial(); })
          .hyp("A B-bar phi != eps", [](Tm t, Pm p) { return !(p.chars[0] * bar(p.chars[1]) * t.phi()).is_trivial(); })
          .hyp("x != 1", arg_not(0, 1))
          .lhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1];
            const CycValue f = t.F({a * a, b * b}, {a * b * t.phi()}, p.args[0]);
            return f * f;
          })
          .rhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1];
            const Elem& x = p.args[0];
            const Char a2 = a * a, b2 = b * b, ab = a * b, phi = t.phi();
            const Char abp = bar(a) * b * phi;  // A-bar B phi
            const std::int64_t q = t.q;
            const Elem z = 4 * x * (1 - x);
            const Elem xx = x - x * x;
            const CycValue gabp = t.g(abp);
            CycValue r = t.chi(ab, 4) * t.g(bar(a2)) * q / (t.g(bar(b2)) * gabp * gabp) *
                         t.F({a2, b2, ab}, {a2 * b2, ab * phi}, z);
            r += t.g(ab * phi) * t.g(bar(ab) * phi) * t.g(a * bar(b) * phi) * t.chi(bar(ab) * phi, xx) /
                 (t.g(bar(b2)) * t.g(a2) * gabp * (q * q));
            if (Terms::d((1 - 2 * x) / ((x - 1) * (x - 1))))
              r += t.chi(bar(a.pow(3) * b) * phi, 1 - x) * t.chi(a * bar(b) * phi, x) * q /
                   (t.g(a2) * t.g(bar(b2)) * gabp * gabp);
            if (dd(ab))
              r += t.g(a * bar(b)) * t.g(bar(a) * b) * t.chi(bar(ab), xx) * ((q - 1) * sg(phi)) /
                   (t.g(a2) * t.g(bar(b2)) * gabp * gabp * q);
            r += t.g(a * bar(b) * phi) * t.chi(bar(ab) * phi, xx) * ((q - 1) * (dd(ab * phi) + q * sg(ab * phi))) /
                 (t.g(a2) * t.g(bar(b2)) * gabp * (q * q));
            return r;
          })
          .done());

  out.push_back(
      Builder("CLAUSEN", IdentityKind::product,
              "2F1(A,B;AB phi|4x(1-x))^2 as a 3F2(A^2,B^2,AB;A^2B^2,AB phi|4x(1-x)) plus one correction term")
          .chars({"A", "B"})
          .args({"x"})
          .cost(2.0)
          .hyp("A^2 != eps", [](Tm, Pm p) { return !(p.chars[0] * p.chars[0]).is_trivial(); })
          .hyp("B^2 != eps", [](Tm, Pm p) { return !(p.chars[1] * p.chars[1]).is_trivial(); })
          .hyp("A B-bar phi != eps", [](Tm t, Pm p) { return !(p.chars[0] * bar(p.chars[1]) * t.phi()).is_trivial(); })
          .hyp("AB != eps", [](Tm, Pm p) { return !(p.chars[0] * p.chars[1]).is_trivial(); })
          .hyp("AB phi != eps", [](Tm t, Pm p) { return !(p.chars[0] * p.chars[1] * t.phi()).is_trivial(); })
          .hyp("x != 1", arg_not(0, 1))
          .hyp("x != 1/2", arg_not(0, 1, 2))
          .lhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1];
            const Elem& x = p.args[0];
            const CycValue f = t.F({a, b}, {a * b * t.phi()}, 4 * x * (1 - x));
            return f * f;
          })
          .rhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1];
            const Elem& x = p.args[0];
            const Char a2 = a * a, b2 = b * b, ab = a * b, phi = t.phi();
            const std::int64_t q = t.q;
            const CycValue num = t.g(b) * t.g(b) * t.g(a * phi) * t.g(a * phi);
            const CycValue den = t.g(a2) * t.g(b2);
            return t.chi(ab, 4) * num / (den * q) * t.F({a2, b2, ab}, {a2 * b2, ab * phi}, 4 * x * (1 - x)) +
                   num * t.chi(bar(ab) * phi, x - x * x) / (den * (q * q));
          })
          .done());
}

std::vector<Hypothesis> mt42_hyps() {
  return {
      {"A^2 != eps", [](Tm, Pm p) { return !(p.chars[0] * p.chars[0]).is_trivial(); }},
      {"E^2 != eps", [](Tm, Pm p) { return !(p.chars[2] * p.chars[2]).is_trivial(); }},
      {"A^2 D-bar^2 E-bar^2 != eps",
       [](Tm, Pm p) { return !(p.chars[0] * bar(p.chars[1]) * bar(p.chars[2])).pow(2).is_trivial(); }},
      {"A^2 D^2 E-bar^2 != eps",
       [](Tm, Pm p) { return !(p.chars[0] * p.chars[1] * bar(p.chars[2])).pow(2).is_trivial(); }},
      {"A^2 != D^2", [](Tm, Pm p) { return !(p.chars[0] * p.chars[0] == p.chars[1] * p.chars[1]); }},
      {"D^2 != E^2", [](Tm, Pm p) { return !(p.chars[1] * p.chars[1] == p.chars[2] * p.chars[2]); }},
      {"z != 1", arg_not(0, 1)},
  };
}

std::vector<Hypothesis> mt43_cor_hyps() {
  return {
      {"A != eps", [](Tm, Pm p) { return !p.chars[0].is_trivial(); }},
      {"B != eps", [](Tm, Pm p) { return !p.chars[1].is_trivial(); }},
      {"C^2 != eps", [](Tm, Pm p) { return !(p.chars[2] * p.chars[2]).is_trivial(); }},
      {"A^2 C-bar^2 != eps", [](Tm, Pm p) { return !(p.chars[0] * bar(p.chars[2])).pow(2).is_trivial(); }},
      {"B^2 C-bar^2 != eps", [](Tm, Pm p) { return !(p.chars[1] * bar(p.chars[2])).pow(2).is_trivial(); }},
      {"A != C^2", [](Tm, Pm p) { return !(p.chars[0] == p.chars[2] * p.chars[2]); }},
      {"B != C^2", [](Tm, Pm p) { return !(p.chars[1] == p.chars[2] * p.chars[2]); }},
      {"x != 1", arg_not(0, 1)},
  };
}

// q AB(-1) A-bar^2 B(1-x) C-bar^2(x) / (g(A) g(B-bar) g(A-bar C^2) g(B C-bar^2)) delta((x-2)/(x-1))
CycValue mt43_pole_term(Tm t, const Char& a, const Char& b, const Char& c, const Elem& x) {
  if (!Terms::d((x - 2) / (x - 1))) return t.num(0);
  const Char c2 = c * c;
  return t.chi(bar(a * a) * b, 1 - x) * t.chi(bar(c2), x) * (t.q * sg(a * b)) /
         (t.g(a) * t.g(bar(b)) * t.g(bar(a) * c2) * t.g(b * bar(c2)));
}

// A-bar(1-x) g(A-bar C) g(B-bar C phi) / (phi(-1) C(4) g(phi) g(A-bar C^2) g(B-bar))
CycValue mt43_factor(Tm t, const Char& a, const Char& b, const Char& c, const Elem& x) {
  const Char phi = t.phi();
  return t.chi(bar(a), 1 - x) * t.g(bar(a) * c) * t.g(bar(b) * c * phi) /
         (t.chi(c, 4) * sg(phi) * t.g(phi) * t.g(bar(a) * c * c) * t.g(bar(b)));
}

CycValue mt43_lhs(Tm t, Pm p) {
  const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
  const Elem& x = p.args[0];
  const Char c2 = c * c;
  return t.F({a, b}, {c2}, x) * t.F({a, c2 * bar(b)}, {c2}, x);
}

void add_mt42_mt43(std::vector<IdentityDescriptor>& out) {
  auto mt42_lhs = [](Tm t, Pm p, bool starred) {
    const Char &a = p.chars[0], &d = p.chars[1], &e = p.chars[2];
    const Elem& z = p.args[0];
    const Char a2 = a * a, d2 = d * d, e2 = e * e;
    if (starred) return t.Fs({a2, e2}, {d2}, z) * t.Fs({d2 * bar(e2), bar(e2)}, {a2 * bar(e2)}, z);
    return t.F({a2, e2}, {d2}, z) * t.F({d2 * bar(e2), bar(e2)}, {a2 * bar(e2)}, z);
  };

  Builder full("MT42", IdentityKind::product,
               "2F1(A^2,E^2;D^2|z) 2F1(D^2 E-bar^2, E-bar^2; A^2 E-bar^2|z) as a 4F3 at -4z/(1-z)^2");
  full.chars({"A", "D", "E"}).args({"z"}).cost(2.0);
  for (auto& h : mt42_hyps()) full.hyp(h.name, h.holds);
  out.push_back(full.lhs([mt42_lhs](Tm t, Pm p) { return mt42_lhs(t, p, false); })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &d = p.chars[1], &e = p.chars[2];
                      const Elem& z = p.args[0];
                      const Char a2 = a * a, d2 = d * d, e2 = e * e, ade = a * d * bar(e), phi = t.phi();
                      CycValue r = t.chi(e2, z) * t.frac(Terms::d(1 - z * z), t.q);
                      r += t.chi(ade, 4) * t.chi(bar(a2 * d2) * e2, 1 - z) * t.g(a * bar(e * d)) *
                           t.g(bar(a) * e * d * phi) / t.g(phi) *
                           t.F({a2, d2 * bar(e2), ade, ade * phi}, {a2 * d2 * bar(e2), d2, a2 * bar(e2)},
                               -4 * z / ((1 - z) * (1 - z)));
                      return r;
                    })
                    .done());

  Builder star("MT42_STAR", IdentityKind::product, "normalized form of the 4F3 product at -4z/(1-z)^2, for z^2 != 1");
  star.chars({"A", "D", "E"}).args({"z"}).cost(2.0);
  for (auto& h : mt42_hyps()) star.hyp(h.name, h.holds);
  star.hyp("z != -1", arg_not(0, -1));
  out.push_back(star.lhs([mt42_lhs](Tm t, Pm p) { return mt42_lhs(t, p, true); })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &d = p.chars[1], &e = p.chars[2];
                      const Elem& z = p.args[0];
                      const Char a2 = a * a, d2 = d * d, e2 = e * e, ade = a * d * bar(e);
                      return t.chi(bar(a2 * d2) * e2, 1 - z) *
                             t.Fs({a2, d2 * bar(e2), ade, ade * t.phi()}, {a2 * d2 * bar(e2), d2, a2 * bar(e2)},
                                  -4 * z / ((1 - z) * (1 - z)));
                    })
                    .done());

  out.push_back(
      Builder("MT43", IdentityKind::product,
              "2F1(A,B;C^2|x) 2F1(A,C^2 B-bar;C^2|x) as a 4F3 at -x^2/(4(1-x)) plus delta-correction terms")
          .chars({"A", "B", "C"})
          .args({"x"})
          .cost(2.0)
          .hyp("A != eps", [](Tm, Pm p) { return !p.chars[0].is_trivial(); })
          .hyp("B != eps", [](Tm, Pm p) { return !p.chars[1].is_trivial(); })
          .hyp("C^2 != eps", [](Tm, Pm p) { return !(p.chars[2] * p.chars[2]).is_trivial(); })
          .hyp("A != C^2", [](Tm, Pm p) { return !(p.chars[0] == p.chars[2] * p.chars[2]); })
          .hyp("B != C^2", [](Tm, Pm p) { return !(p.chars[1] == p.chars[2] * p.chars[2]); })
          .hyp("x != 1", arg_not(0, 1))
          .lhs(mt43_lhs)
          .rhs([](Tm t, Pm p) {
            const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
            const Elem& x = p.args[0];
            const Char c2 = c * c, phi = t.phi();
            const std::int64_t q = t.q;
            const Elem y = -(x * x) / (4 * (1 - x));
            const CycValue k = mt43_factor(t, a, b, c, x);
            CycValue r = mt43_pole_term(t, a, b, c, x);
            r += k * q * t.F({a, b, bar(a) * c2, bar(b) * c2}, {c2, c, c * phi}, y);
            CycValue bracket = t.num(0);
            if (dd(bar(a) * c) && dd(bar(b) * c * phi)) bracket += t.F({a, b}, {c2}, y) * t.frac(q - 1, q);
            if (dd(bar(a) * c)) bracket -= t.F({a, b, bar(b) * c2}, {c2, c * phi}, y);
            if (dd(bar(b) * c * phi)) bracket -= t.F({a, b, bar(a) * c2}, {c2, c}, y);
            r += k * (q - 1) * bracket;
            const CycValue phi1x = t.chi(phi, 1 - x);
            const CycValue phix1 = t.chi(phi, x - 1);
            const Char ac = a * bar(c), bc = b * bar(c);
            CycValue blk = t.num((q - 1) * dd(ac) * dd(bc) - q * sg(b * c) * dd(ac) - q * sg(a * c) * dd(bc));
            blk += phi1x * ((q - 1) * dd(ac * phi) * dd(bc * phi));
            blk -= phix1 * (q * sg(b * c) * dd(ac * phi) + q * sg(a * c) * dd(bc * phi));
            r -= t.chi(bar(a), 1 - x) * t.chi(bar(c), x * x) * t.chi(c, 1 - x) * (q - 1) * blk /
                 (t.g(a) * t.g(bar(b)) * t.g(b * bar(c2)) * t.g(bar(a) * c2) * q);
            return r;
          })
          .done());

  Builder cor("MT43_COR", IdentityKind::product,
              "2F1(A,B;C^2|x) 2F1(A,C^2 B-bar;C^2|x) as a single 4F3 at -x^2/(4(1-x)), generic parameters");
  cor.chars({"A", "B", "C"}).args({"x"}).cost(2.0);
  for (auto& h : mt43_cor_hyps()) cor.hyp(h.name, h.holds);
  out.push_back(cor.lhs(mt43_lhs)
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem& x = p.args[0];
                      const Char c2 = c * c, phi = t.phi();
                      const Elem y = -(x * x) / (4 * (1 - x));
                      return mt43_pole_term(t, a, b, c, x) +
                             t.chi(bar(c), 4) * t.chi(bar(a), 1 - x) * t.g(bar(a) * c) * t.g(bar(b) * c * phi) *
                                 (t.q * sg(phi)) / (t.g(phi) * t.g(bar(a) * c2) * t.g(bar(b))) *
                                 t.F({a, b, bar(a) * c2, bar(b) * c2}, {c2, c, c * phi}, y);
                    })
                    .done());

  Builder cstar("MT43_COR_STAR", IdentityKind::product,
                "normalized form: 2F1(A,B;C^2|x)* 2F1(A,C^2 B-bar;C^2|x)* = A-bar(1-x) 4F3(...)*, for x != 2");
  cstar.chars({"A", "B", "C"}).args({"x"}).cost(2.0);
  for (auto& h : mt43_cor_hyps()) cstar.hyp(h.name, h.holds);
  cstar.hyp("x != 2", arg_not(0, 2));
  out.push_back(cstar
                    .lhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem& x = p.args[0];
                      const Char c2 = c * c;
                      return t.Fs({a, b}, {c2}, x) * t.Fs({a, c2 * bar(b)}, {c2}, x);
                    })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem& x = p.args[0];
                      const Char c2 = c * c;
                      return t.chi(bar(a), 1 - x) * t.Fs({a, b, bar(a) * c2, bar(b) * c2}, {c2, c, c * t.phi()},
                                                          -(x * x) / (4 * (1 - x)));
                    })
                    .done());
}

std::vector<Hypothesis> f4_hyps(const char* a1, const char* a2) {
  return {
      {"A != eps", [](Tm, Pm p) { return !p.chars[0].is_trivial(); }},
      {"B != eps", [](Tm, Pm p) { return !p.chars[1].is_trivial(); }},
      {"B != C", [](Tm, Pm p) { return !(p.chars[1] == p.chars[2]); }},
      {"A != C", [](Tm, Pm p) { return !(p.chars[0] == p.chars[2]); }},
      {std::string(a1) + " != 1", arg_not(0, 1)},
      {std::string(a2) + " != 1", arg_not(1, 1)},
  };
}

void add_f4(std::vector<IdentityDescriptor>& out) {
  Builder prod("F4_PRODUCT", IdentityKind::product,
               "F4(A;B;C,AB C-bar; -x/((1-x)(1-y)), -y/((1-x)(1-y)))* as a product of two normalized 2F1 plus a delta(1-xy) term");
  prod.chars({"A", "B", "C"}).args({"x", "y"}).cost(13.0);
  for (auto& h : f4_hyps("x", "y")) prod.hyp(h.name, h.holds);
  out.push_back(prod.lhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem &x = p.args[0], &y = p.args[1];
                      const Elem w = (1 - x) * (1 - y);
                      return appell_F4_star(t.s, a, b, c, a * b * bar(c), -x / w, -y / w);
                    })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem &x = p.args[0], &y = p.args[1];
                      CycValue r = t.Fs({a, b}, {c}, -x / (1 - x)) * t.Fs({a, b}, {a * b * bar(c)}, -y / (1 - y));
                      if (Terms::d(1 - x * y))
                        r -= t.chi(bar(b) * c, y) * t.chi(a, 1 - x) * t.chi(b, 1 - y) * (t.q * t.q * sg(a * c)) /
                             (t.g(a) * t.g(b) * t.g(bar(c)) * t.g(bar(a * b) * c));
                      return r;
                    })
                    .done());

  Builder gr("F4_GREENE", IdentityKind::product,
             "2F1(A,B;C|z) 2F1(A,B;AB C-bar|w) via F4(A;B;C,AB C-bar; z(1-w), w(1-z))* plus a delta term");
  gr.chars({"A", "B", "C"}).args({"z", "w"}).cost(13.0);
  for (auto& h : f4_hyps("z", "w")) gr.hyp(h.name, h.holds);
  out.push_back(gr.lhs([](Tm t, Pm p) {
                    const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                    const Elem &z = p.args[0], &w = p.args[1];
                    return t.F({a, b}, {c}, z) * t.F({a, b}, {a * b * bar(c)}, w);
                  })
                    .rhs([](Tm t, Pm p) {
                      const Char &a = p.chars[0], &b = p.chars[1], &c = p.chars[2];
                      const Elem &z = p.args[0], &w = p.args[1];
                      CycValue r = t.g(b) * t.g(bar(c)) * t.g(bar(a * b) * c) * sg(a) /
                                   (t.g(bar(b)) * t.g(b * bar(c)) * t.g(bar(a) * c) * t.q) *
                                   appell_F4_star(t.s, a, b, c, a * b * bar(c), z * (1 - w), w * (1 - z));
                      if (Terms::d((1 - w - z) / ((1 - z) * (1 - w))))
                        r += t.chi(bar(a), 1 - z) * t.chi(bar(b) * c, w) * t.chi(bar(c), 1 - w) * (t.q * sg(b)) /
                             (t.g(a) * t.g(bar(b)) * t.g(b * bar(c)) * t.g(bar(a) * c));
                      return r;
                    })
                    .done());
}

// ----------------------------------------------------------------------------
// Special values.

// A-bar^4 phi(2) / (g(phi) g(A^2 chi4) g(A-bar^2 chi4))
CycValue v41_factor(Tm t, const Char& a) {
  const Char a2 = a * a, chi4 = t.chi4(), phi = t.phi();
  return t.chi(bar(a2 * a2) * phi, 2) / (t.g(phi) * t.g(a2 * chi4) * t.g(bar(a2) * chi4));
}

// A-bar^4(1 + r) + A-bar^4(1 - r)
CycValue sym_sum(Tm t, const Char& c, const Elem& r) { return t.chi(c, 1 + r) + t.chi(c, 1 - r); }

CycValue v41_series(Tm t, const Char& a, const Elem& arg) {
  const Char a2 = a * a, chi4 = t.chi4(), phi = t.phi();
  return t.F({a2, a2 * phi, a2 * chi4, a2 * bar(chi4)}, {a2 * a2 * phi, a2 * a2, phi}, arg);
}

bool v41_hyp(Tm t, Pm p) {
  const Char a2 = p.chars[0] * p.chars[0];
  const Char chi4 = t.chi4();
  return !(a2.is_trivial() || a2 == t.phi() || a2 == chi4 || a2 == bar(chi4));
}

void add_values(std::vector<IdentityDescriptor>& out) {
  out.push_back(
      Builder("VALUE41_I", IdentityKind::value,
              "4F3(A^2, A^2 phi, A^2 chi4, A^2 chi4-bar; A^4 phi, A^4, phi | 4x(1-x)) in closed form via square roots of x and 1-x")
          .chars({"A"})
          .args({"x"})
          .mod(4, {1})
          .hyp("A^2 not in {eps, phi, chi4, chi4-bar}", v41_hyp)
          .hyp("x != 0", arg_not(0, 0))
          .hyp("x != 1", arg_not(0, 1))
          .lhs([](Tm t, Pm p) {
            const Elem& x = p.args[0];
            return v41_series(t, p.chars[0], 4 * x * (1 - x));
          })
          .rhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            const Elem& x = p.args[0];
            const Char a2 = a * a, a4 = a2 * a2, chi4 = t.chi4(), phi = t.phi();
            CycValue r = t.num(0);
            const auto r1 = t.root(1 - x);
            const auto r2 = t.root(x);
            if (r1 && r2) r = v41_factor(t, a) * sym_sum(t, bar(a4), *r1) * sym_sum(t, bar(a4), *r2);
            if (Terms::d((1 - 2 * x) / ((1 - x) * (1 - x))))
              r -= t.chi(a2 * phi, x) * t.chi(bar(a4) * phi, 2) * t.chi(bar(a4 * a2), x - 1) * t.g(phi) /
                   (t.g(a2 * chi4) * t.g(bar(a2) * chi4) * t.q);
            return r;
          })
          .branch([](Tm t, Pm p) {
            const Elem& x = p.args[0];
            return (t.root(x) && t.root(1 - x)) ? "x and 1-x squares" : "x or 1-x non-square";
          })
          .done());

  out.push_back(
      Builder("VALUE41_II", IdentityKind::value,
              "4F3(A^2, A^2 phi, A^2 chi4, A^2 chi4-bar; A^4 phi, A^4, phi | -4x/(1-x)^2) in closed form")
          .chars({"A"})
          .args({"x"})
          .mod(4, {1})
          .hyp("A^2 not in {eps, phi, chi4, chi4-bar}", v41_hyp)
          .hyp("x != 0", arg_not(0, 0))
          .hyp("x != 1", arg_not(0, 1))
          .lhs([](Tm t, Pm p) {
            const Elem& x = p.args[0];
            return v41_series(t, p.chars[0], -4 * x / ((1 - x) * (1 - x)));
          })
          .rhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            const Elem& x = p.args[0];
            const Char a2 = a * a, a4 = a2 * a2, chi4 = t.chi4(), phi = t.phi();
            CycValue r = t.num(0);
            const auto r1 = t.root(1 - x);
            const auto sq = t.root(x * x - x);
            if (r1 && sq) {
              const auto r2 = t.root(x / (x - 1));
              r = v41_factor(t, a) * sym_sum(t, bar(a4), 1 / *r1) * sym_sum(t, bar(a4), *r2);
            }
            if (Terms::d(1 - x * x))
              r -= t.chi(a2 * phi, x) * t.chi(bar(a4) * phi, 2) * t.chi(a4 * phi, x - 1) * t.g(phi) /
                   (t.g(a2 * chi4) * t.g(bar(a2) * chi4) * t.q);
            return r;
          })
          .branch([](Tm t, Pm p) {
            const Elem& x = p.args[0];
            return (t.root(1 - x) && t.root(x * x - x)) ? "1-x and x^2-x squares" : "1-x or x^2-x non-square";
          })
          .done());

  out.push_back(
      Builder("V41C1", IdentityKind::value,
              "4F3(A^2, A^2 phi, A^2 chi4, A^2 chi4-bar; A^4 phi, A^4, phi | 1), split by q mod 8")
          .chars({"A"})
          .mod(4, {1})
          .hyp("A^2 not in {eps, phi, chi4, chi4-bar}", v41_hyp)
          .lhs([](Tm t, Pm p) { return v41_series(t, p.chars[0], t.el(1)); })
          .rhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            const Char a2 = a * a, chi4 = t.chi4(), phi = t.phi();
            const CycValue den = t.g(a2 * chi4) * t.g(bar(a2) * chi4);
            CycValue r = -t.g(phi) / (den * t.q);
            if (t.q % 8 == 1) {
              const Elem s2 = *t.root(t.el(2));
              r += (2 + sym_sum(t, bar(a2.pow(4)), s2)) / (t.g(phi) * den);
            }
            return r;
          })
          .branch([](Tm t, Pm) { return t.q % 8 == 1 ? "q=1 mod 8" : "q=5 mod 8"; })
          .done());

  out.push_back(
      Builder("VALUE44", IdentityKind::value, "3F2(A^2, A^6, A^4 phi; A^8, A^4 | -8) in terms of binomial coefficients")
          .chars({"A"})
          .hyp("A^2 != eps", [](Tm, Pm p) { return !p.chars[0].pow(2).is_trivial(); })
          .hyp("A^6 != eps", [](Tm, Pm p) { return !p.chars[0].pow(6).is_trivial(); })
          .lhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            return t.F({a.pow(2), a.pow(6), a.pow(4) * t.phi()}, {a.pow(8), a.pow(4)}, t.el(-8));
          })
          .rhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            const Char a2 = a.pow(2), a3 = a.pow(3), phi = t.phi();
            const std::int64_t q = t.q;
            const CycValue s = t.B(a3, a2) + t.B(a3 * phi, a2);
            CycValue r = t.chi(bar(a), 256) * t.g(a2) * t.g(a2) * t.g(bar(a.pow(6))) / (t.g(bar(a2)) * q) * s * s;
            r -= t.chi(bar(a), 4096) / q;
            if (dd(a.pow(4) * phi))
              r -= t.chi(bar(a), 4096) * t.chi(phi, 2) * t.g(bar(a2) * phi) * t.g(a2 * phi) * (q - 1) / (q * q * q);
            return r;
          })
          .done());

  out.push_back(Builder("ONO8", IdentityKind::value,
                        "3F2(phi, phi, phi; eps, eps | -8) = ((chi4 choose phi) + (chi4-bar choose phi))^2 - 1/q")
                    .mod(4, {1})
                    .lhs([](Tm t, Pm) {
                      const Char phi = t.phi(), eps = t.eps();
                      return t.F({phi, phi, phi}, {eps, eps}, t.el(-8));
                    })
                    .rhs([](Tm t, Pm) {
                      const Char chi4 = t.chi4(), phi = t.phi();
                      const CycValue s = t.B(chi4, phi) + t.B(bar(chi4), phi);
                      return s * s - t.frac(1, t.q);
                    })
                    .done());

  out.push_back(
      Builder("VALUE45", IdentityKind::value,
              "3F2(phi, C^2 phi, C phi; C^2, C | -1) = 1/q, or 1/q + 2/q^2 Re(J(D,phi) J(D-bar chi4, phi)) when C chi4 = D^2")
          .chars({"C"})
          .mod(8, {1})
          .hyp("order of C not in {1, 2, 4}", [](Tm, Pm p) { return !order_in(p.chars[0], {1, 2, 4}); })
          .lhs([](Tm t, Pm p) {
            const Char& c = p.chars[0];
            const Char phi = t.phi();
            return t.F({phi, c * c * phi, c * phi}, {c * c, c}, t.el(-1));
          })
          .rhs([](Tm t, Pm p) {
            const Char& c = p.chars[0];
            const Char phi = t.phi(), chi4 = t.chi4();
            CycValue r = t.frac(1, t.q);
            const Char c4 = c * chi4;
            if (!c4.is_square()) return r;
            const Char d = t.char_root(c4);
            // 2 Re(X) = X + conj(X), with conj formed from the conjugate characters
            const CycValue two_re =
                t.J(d, phi) * t.J(bar(d) * chi4, phi) + t.J(bar(d), phi) * t.J(d * bar(chi4), phi);
            return r + two_re / (t.q * t.q);
          })
          .branch([](Tm t, Pm p) {
            return (p.chars[0] * t.chi4()).is_square() ? "C chi4 square" : "C chi4 non-square";
          })
          .done());

  out.push_back(
      Builder("VALUE46", IdentityKind::value,
              "3F2(C-bar, C^3, C; C^2, C phi | 1/4) for a square C of order > 4, split by q mod 12")
          .chars({"C"})
          .mod(12, {1, 11})
          .hyp("C square", [](Tm, Pm p) { return p.chars[0].is_square(); })
          .hyp("order of C > 4", [](Tm, Pm p) { return p.chars[0].order() > 4; })
          .lhs([](Tm t, Pm p) {
            const Char& c = p.chars[0];
            return t.F({bar(c), c.pow(3), c}, {c * c, c * t.phi()}, 1 / t.el(4));
          })
          .rhs([](Tm t, Pm p) {
            const Char& c = p.chars[0];
            const CycValue c4 = t.chi(c, 4);
            if (t.q % 12 == 11) return -c4 / t.q;
            const Char x3 = t.chi3();
            const CycValue two_re = t.J(c, x3) * t.J(bar(c), x3) + t.J(bar(c), bar(x3)) * t.J(c, bar(x3));
            return c4 * (t.q + two_re) / t.q;
          })
          .branch([](Tm t, Pm) { return t.q % 12 == 1 ? "q=1 mod 12" : "q=11 mod 12"; })
          .done());

  out.push_back(
      Builder("VALUE43", IdentityKind::value,
              "3F2(A-bar^2, A^2, phi; A^4, A-bar^4 | -8) in terms of binomial coefficients, with delta(A-bar^4) terms")
          .chars({"A"})
          .hyp("A^2 != eps", [](Tm, Pm p) { return !p.chars[0].pow(2).is_trivial(); })
          .hyp("A^6 != eps", [](Tm, Pm p) { return !p.chars[0].pow(6).is_trivial(); })
          .hyp("A^4 != phi", [](Tm t, Pm p) { return !(p.chars[0].pow(4) == t.phi()); })
          .lhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            return t.F({bar(a.pow(2)), a.pow(2), t.phi()}, {a.pow(4), bar(a.pow(4))}, t.el(-8));
          })
          .rhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            const Char a2 = a.pow(2), a4 = a.pow(4), phi = t.phi();
            const std::int64_t q = t.q;
            const CycValue inv = t.num(1) / t.B(bar(a2), bar(a4));
            const CycValue gq = t.g(phi) / (t.g(bar(a4)) * t.g(a4 * phi));
            CycValue r = gq * inv * (t.B(bar(a), a2) + t.B(phi * bar(a), a2)) * (t.B(a, bar(a2)) + t.B(phi * a, bar(a2)));
            if (dd(bar(a4)))
              r += inv * t.F({a2, bar(a2), phi}, {t.eps(), bar(a4)}, t.el(-8)) * t.frac(q - 1, q);
            r -= t.B(phi, bar(a4)) * inv / (q * q);
            r -= gq * inv * ((q - 1) * (dd(bar(a4)) + q)) / (q * q * q);
            return r;
          })
          .done());

  out.push_back(
      Builder("EG_FROM_43", IdentityKind::value,
              "3F2(phi, A^2, A-bar^2; A^4, A-bar^4 | -8) = 1/q + A-bar^2(4) J(A-bar^2, A^6)/(q^2 J(A^2, A^2)) (J(A^2, A)^2 + J(A^2, A phi)^2)")
          .chars({"A"})
          .hyp("order of A not in {1, 2, 3, 4, 6, 8}", [](Tm, Pm p) { return !order_in(p.chars[0], {1, 2, 3, 4, 6, 8}); })
          .lhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            return t.F({t.phi(), a.pow(2), bar(a.pow(2))}, {a.pow(4), bar(a.pow(4))}, t.el(-8));
          })
          .rhs([](Tm t, Pm p) {
            const Char& a = p.chars[0];
            const Char a2 = a.pow(2);
            const CycValue j1 = t.J(a2, a), j2 = t.J(a2, a * t.phi());
            return t.frac(1, t.q) + t.chi(bar(a2), 4) * t.J(bar(a2), a.pow(6)) / (t.J(a2, a2) * (t.q * t.q)) *
                                        (j1 * j1 + j2 * j2);
          })
          .done());

  out.push_back(
      Builder("VALUE49", IdentityKind::value,
              "3F2(S-bar^3, S-bar, S-bar^2 phi; S-bar^4, S-bar^2 | 4) for a square S of order > 4, split by q mod 12")
          .chars({"S"})
          .mod(12, {1, 11})
          .hyp("S square", [](Tm, Pm p) { return p.chars[0].is_square(); })
          .hyp("order of S > 4", [](Tm, Pm p) { return p.chars[0].order() > 4; })
          .lhs([](Tm t, Pm p) {
            const Char& s = p.chars[0];
            return t.F({bar(s.pow(3)), bar(s), bar(s.pow(2)) * t.phi()}, {bar(s.pow(4)), bar(s.pow(2))}, t.el(4));
          })
          .rhs([](Tm t, Pm p) {
            const Char& s = p.chars[0];
            const CycValue s16 = t.chi(s, 16);
            CycValue r = -s16 * sg(t.phi()) / t.q;
            if (t.q % 12 == 1) {
              const Char x3 = t.chi3();
              const CycValue b = t.B(s, x3) + t.B(s, x3 * x3);
              r += s16 * t.chi(bar(s), 27) * t.J(bar(s), bar(s)) / t.J(bar(s.pow(3)), s) * b * b;
            }
            return r;
          })
          .branch([](Tm t, Pm) { return t.q % 12 == 1 ? "q=1 mod 12" : "q=11 mod 12"; })
          .done());
}

std::vector<IdentityDescriptor> build_catalog() {
  std::vector<IdentityDescriptor> out;
  add_lemmas(out);
  add_greene(out);
  add_mt41(out);
  add_mt42_mt43(out);
  add_f4(out);
  add_values(out);
  return out;
}

}  // namespace

const std::vector<IdentityDescriptor>& catalog() {
  static const std::vector<IdentityDescriptor> cat = build_catalog();
  return cat;
}

const IdentityDescriptor& find_identity(const std::string& id) {
  for (const auto& d : catalog())
    if (d.id == id) return d;
  throw LookupError("unknown identity '" + id + "'");
}

std::vector<const IdentityDescriptor*> select_identities(const std::string& selector) {
  std::vector<const IdentityDescriptor*> out;
  for (const auto& d : catalog()) {
    if (selector == "all" || d.id == selector || d.id.rfind(selector + ":", 0) == 0) out.push_back(&d);
  }
  if (out.empty()) throw LookupError("unknown identity '" + selector + "'");
  return out;
}

}  // namespace ffhyper
