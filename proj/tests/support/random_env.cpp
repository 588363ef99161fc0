#include "support/random_env.hpp"

#include <vector>

#include "folbridge/context.hpp"
#include "folbridge/parser.hpp"
#include "folbridge/printer.hpp"
#include "support/generators.hpp"

namespace folbridge::testing {

namespace {

const char* const kDatatypes = R"(
data nat = O | S (nat).
data list (A : Type) = nil | cons (A) (list A).
data option (A : Type) = none | some (A).
data pair (A : Type) (B : Type) = mkpair (A) (B).
data tree = leaf | node (tree) (Int) (tree).

def app (A : Type) : list A -> list A -> list A =
  fix app_anon / 0 (l1 : list A) (l2 : list A) : list A :=
    match l1 with
    | nil => l2
    | cons x l => cons A x (app_anon l l2)
    end.
)";

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <typename T>
const T& choose(Rng& rng, const std::vector<T>& xs) {
  return xs[pick(rng, xs.size())];
}

struct Signature {
  std::string name;
  std::vector<std::string> type_params;
  std::vector<std::string> params;  // printed types, may mention type params
};

class Builder {
 public:
  explicit Builder(Rng& rng) : rng_(rng), text_(kDatatypes), env_(parse_problem(text_ + "goal true_p.\n").env) {}

  std::string build() {
    const std::size_t n = 1 + pick(rng_, 3);
    for (std::size_t i = 0; i < n; ++i) add_definition("r" + std::to_string(i));
    std::string out = text_;
    for (const auto& s : sigs_) {
      if (s.type_params.empty()) continue;
      out += "lemma " + s.name + "_refl : forall";
      for (const auto& a : s.type_params) out += " (" + a + " : Type)";
      std::string call = s.name;
      for (const auto& a : s.type_params) call += " " + a;
      for (std::size_t j = 0; j < s.params.size(); ++j) {
        out += " (v" + std::to_string(j) + " : " + s.params[j] + ")";
        call += " v" + std::to_string(j);
      }
      out += ", " + call + " = " + call + ".\n";
    }
    return out + goal();
  }

 private:
  // Random closed type for goal instances.
  std::string object_type() {
    static const std::vector<std::string> types{"Int", "bool", "nat", "list Int", "option bool", "list nat",
                                                "pair Int bool", "tree"};
    return choose(rng_, types);
  }

  std::string goal() {
    std::string binders, body;
    std::size_t v = 0;
    // Sometimes keep a type variable in the goal, which scope introduces.
    const bool generic = pick(rng_, 4) == 0;
    if (generic) binders += " (T : Type)";
    for (const auto& s : sigs_) {
      std::string call = s.name;
      std::vector<std::string> inst;
      for (std::size_t a = 0; a < s.type_params.size(); ++a) {
        inst.push_back(generic && a == 0 ? "T" : object_type());
        call += " (" + inst.back() + ")";
      }
      for (const auto& p : s.params) {
        std::string ty = p;
        for (std::size_t a = 0; a < s.type_params.size(); ++a) ty = replace_word(ty, s.type_params[a], inst[a]);
        const std::string x = "g" + std::to_string(v++);
        binders += " (" + x + " : " + ty + ")";
        call += " " + x;
      }
      body += (body.empty() ? "" : " /\\ ") + call + " = " + call;
    }
    return "goal" + (binders.empty() ? std::string(" ") : " forall" + binders + ", ") + body + ".\n";
  }

  static std::string replace_word(const std::string& s, const std::string& from, const std::string& to) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
      const bool boundary = i == 0 || s[i - 1] == ' ' || s[i - 1] == '(';
      const std::size_t e = i + from.size();
      if (boundary && s.compare(i, from.size(), from) == 0 && (e == s.size() || s[e] == ' ' || s[e] == ')')) {
        out += "(" + to + ")";
        i = e;
      } else {
        out += s[i++];
      }
    }
    return out;
  }

  // Random body of `type` in a context given as (name, type) pairs.
  std::string body(const std::vector<std::pair<std::string, std::string>>& vars, const std::string& type,
                   std::size_t size) {
    Context ctx;
    std::vector<std::string> names;
    for (const auto& [n, t] : vars) {
      ctx.push(n, parse_term(t, env_, ctx));
      names.push_back(n);
    }
    const Term ty = parse_term(type, env_, ctx);
    return "(" + print_term(random_typed_term(env_, ctx, ty, size, rng_), env_, names) + ")";
  }

  // Result combined with a recursive call of the same type.
  std::string combine(const std::string& type, const std::string& fresh, const std::string& rec) {
    if (type == "Int") return choose(rng_, std::vector<std::string>{fresh + " + " + rec, rec + " - " + fresh, rec});
    if (type == "nat") return choose(rng_, std::vector<std::string>{"S (" + rec + ")", rec});
    if (type == "bool") return choose(rng_, std::vector<std::string>{fresh + " || " + rec, "negb (" + rec + ")"});
    if (type == "list Int") return choose(rng_, std::vector<std::string>{"app Int " + fresh + " (" + rec + ")", rec});
    return choose(rng_, std::vector<std::string>{fresh, rec});
  }

  void add_definition(const std::string& name) {
    std::string def;
    Signature sig{name, {}, {}};
    const std::string self = name + "_anon";
    static const std::vector<std::string> results{"Int", "nat", "bool", "list Int", "option Int"};
    switch (pick(rng_, 6)) {
      case 0: {  // structural recursion over a list
        const std::string elem = choose(rng_, std::vector<std::string>{"Int", "bool", "nat"});
        const std::string r = choose(rng_, results);
        const std::string l = "list " + elem;
        const std::vector<std::pair<std::string, std::string>> outer{{self, l + " -> " + r}, {"l", l}};
        auto inner = outer;
        inner.push_back({"h", elem});
        inner.push_back({"t", l});
        def = "def " + name + " : " + l + " -> " + r + " =\n  fix " + self + " / 0 (l : " + l + ") : " + r +
              " :=\n    match l with\n    | nil => " + body(outer, r, 5) + "\n    | cons h t => " +
              combine(r, body(inner, r, 5), self + " t") + "\n    end.\n";
        sig.params = {l};
        break;
      }
      case 1: {  // recursion over nat with an extra parameter
        const std::string r = choose(rng_, results);
        const std::vector<std::pair<std::string, std::string>> outer{{"k", "Int"}, {self, "nat -> " + r}, {"n", "nat"}};
        auto inner = outer;
        inner.push_back({"p", "nat"});
        def = "def " + name + " (k : Int) : nat -> " + r + " =\n  fix " + self + " / 0 (n : nat) : " + r +
              " :=\n    match n with\n    | O => " + body(outer, r, 5) + "\n    | S p => " +
              combine(r, body(inner, r, 5), self + " p") + "\n    end.\n";
        sig.params = {"Int", "nat"};
        break;
      }
      case 2: {  // recursion over a tree
        const std::string r = choose(rng_, std::vector<std::string>{"Int", "nat", "bool"});
        const std::vector<std::pair<std::string, std::string>> outer{{self, "tree -> " + r}, {"x", "tree"}};
        auto inner = outer;
        inner.push_back({"a", "tree"});
        inner.push_back({"v", "Int"});
        inner.push_back({"b", "tree"});
        def = "def " + name + " : tree -> " + r + " =\n  fix " + self + " / 0 (x : tree) : " + r +
              " :=\n    match x with\n    | leaf => " + body(outer, r, 4) + "\n    | node a v b => " +
              combine(r, combine(r, body(inner, r, 4), self + " a"), self + " b") + "\n    end.\n";
        sig.params = {"tree"};
        break;
      }
      case 3: {  // polymorphic list function
        struct Shape {
          std::string result, nil_case;
          std::vector<std::string> cons_cases;
        };
        const std::string rec = self + " t";
        const std::vector<Shape> shapes{
            {"nat", "O", {"S (" + rec + ")", rec, "S (S (" + rec + "))"}},
            {"list A", "nil A", {"cons A h (" + rec + ")", rec, "app A (" + rec + ") (cons A h (nil A))"}},
            {"option A", "none A",
             {"some A h", rec, "match " + rec + " with | none => some A h | some y => some A y end"}},
            {"bool", choose(rng_, std::vector<std::string>{"true", "false"}), {"negb (" + rec + ")", rec}},
        };
        const Shape& s = choose(rng_, shapes);
        def = "def " + name + " (A : Type) : list A -> " + s.result + " =\n  fix " + self + " / 0 (l : list A) : " +
              s.result + " :=\n    match l with\n    | nil => " + s.nil_case + "\n    | cons h t => " +
              choose(rng_, s.cons_cases) + "\n    end.\n";
        sig.type_params = {"A"};
        sig.params = {"list A"};
        break;
      }
      case 4: {  // polymorphic eliminators, one or two type parameters
        if (pick(rng_, 2) == 0) {
          def = "def " + name + " (A : Type) (o : option A) (d : A) : A =\n  match o with | none => d | some x => " +
                choose(rng_, std::vector<std::string>{"x", "d"}) + " end.\n";
          sig.type_params = {"A"};
          sig.params = {"option A", "A"};
        } else {
          def = "def " + name + " (A B : Type) (p : pair A B) : pair B A =\n  match p with | mkpair a b => mkpair B A b a end.\n";
          sig.type_params = {"A", "B"};
          sig.params = {"pair A B"};
        }
        break;
      }
      default: {  // nested match on the first two list elements
        const std::string r = choose(rng_, results);
        const std::vector<std::pair<std::string, std::string>> outer{{"l", "list Int"}};
        auto one = outer;
        one.push_back({"h", "Int"});
        one.push_back({"t", "list Int"});
        auto two = one;
        two.push_back({"h2", "Int"});
        two.push_back({"t2", "list Int"});
        def = "def " + name + " (l : list Int) : " + r + " =\n  match l with\n  | nil => " + body(outer, r, 4) +
              "\n  | cons h t =>\n      match t with\n      | nil => " + body(one, r, 4) + "\n      | cons h2 t2 => " +
              body(two, r, 4) + "\n      end\n  end.\n";
        sig.params = {"list Int"};
        break;
      }
    }
    text_ += "\n" + def;
    env_ = parse_problem(text_ + "goal true_p.\n").env;
    sigs_.push_back(sig);
  }

  Rng& rng_;
  std::string text_;
  GlobalEnv env_;
  std::vector<Signature> sigs_;
};

}  // namespace

std::string random_definitional_problem(Rng& rng) { return Builder(rng).build(); }

}  // namespace folbridge::testing
