#pragma once

// Command-line front end. run() is the whole program; main() only forwards
// argv, so tests drive the CLI in-process.
//
// Exit codes: 0 all requested checks pass, 1 some check failed, 2 usage or
// input error.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diagcat/checks.hpp"
#include "diagcat/cobordism.hpp"
#include "diagcat/error.hpp"
#include "diagcat/fpfun.hpp"
#include "diagcat/homspace.hpp"
#include "diagcat/karoubi.hpp"
#include "diagcat/moebius.hpp"
#include "diagcat/partition.hpp"

namespace diagcat {

namespace cli_detail {

inline constexpr int kDefaultMaxPoints = 6;

/// DIAGCAT_MAX_POINTS overrides the default truncation bound.
inline int default_max_points(int fallback = kDefaultMaxPoints) {
  const char* env = std::getenv("DIAGCAT_MAX_POINTS");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 12) throw Error("DIAGCAT_MAX_POINTS must be an integer in 1..12");
  return static_cast<int>(v);
}

inline std::string shell_quote(const std::string& s) {
  const bool plain = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || std::string_view("-_./=,").find(c) != std::string_view::npos;
  });
  if (plain) return s;
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

inline std::string join_command(const std::vector<std::string>& args) {
  std::string out = "diagcat";
  for (const auto& a : args) out += " " + shell_quote(a);
  return out;
}

inline std::vector<DiagramClass> parse_classes(const std::string& text) {
  std::vector<DiagramClass> out;
  if (text == "*") return {std::begin(kAllDiagramClasses), std::end(kAllDiagramClasses)};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_diagram_class(item));
  if (out.empty()) throw Error("empty class list");
  return out;
}

inline void require_non_negative(int v, const char* name) {
  if (v < 0) throw Error(std::string(name) + " must be non-negative");
}

// Options shared by every subcommand.
struct Common {
  std::string t = "generic";
  std::string cls = "All";
  bool json = false;
};

inline void add_common(CLI::App* app, Common& c, bool with_class = true) {
  app->add_option("--t", c.t, "loop parameter: generic or a rational p/q")->capture_default_str();
  if (with_class) app->add_option("--class", c.cls, "diagram class (comma-separated list, or * for all)")->capture_default_str();
  app->add_flag("--json", c.json, "emit JSON");
}

class Runner {
public:
  explicit Runner(std::ostream& out) : out_(out) {}

  // Prints one report and records its verdict. Failures get a replay command.
  void emit(CheckReport r, const std::vector<std::string>& replay, bool json) {
    if (r.status == CheckStatus::Fail) {
      if (!r.witness.is_object()) r.witness = Json::object();
      r.witness["replay"] = join_command(replay);
      failed_ = true;
    }
    if (json) {
      out_ << r.to_json().dump() << "\n";
    } else {
      out_ << r.check << ": " << to_string(r.status) << "\n";
      out_ << "  params: " << r.params.dump() << "\n";
      if (!r.witness.is_null()) out_ << "  witness: " << r.witness.dump() << "\n";
    }
  }

  void print(const std::string& command, const std::string& t, const std::string& text, bool json) {
    if (json) {
      Json j;
      j["command"] = command;
      j["t"] = t;
      j["result"] = text;
      out_ << j.dump() << "\n";
    } else {
      out_ << text << "\n";
    }
  }

  std::ostream& out() { return out_; }
  bool failed() const noexcept { return failed_; }

private:
  std::ostream& out_;
  bool failed_ = false;
};

}  // namespace cli_detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Exact computations in diagrammatic monoidal categories", "diagcat"};
  app.require_subcommand(1);
  Runner runner(out);
  std::function<void()> action;

  // ---- compose / tensor ----
  Common c_compose;
  std::string f_text, g_text;
  auto* compose_cmd = app.add_subcommand("compose", "g ∘ f for morphisms given in the diagram grammar (g first)");
  add_common(compose_cmd, c_compose, false);
  compose_cmd->add_option("g", g_text, "outer morphism")->required();
  compose_cmd->add_option("f", f_text, "inner morphism")->required();
  compose_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(c_compose.t);
      LinMorphism g = parse_lin_morphism(g_text, field), f = parse_lin_morphism(f_text, field);
      runner.print("compose", field.to_string(), to_string(compose(g, f, field)), c_compose.json);
    };
  });

  Common c_tensor;
  std::string a_text, b_text;
  auto* tensor_cmd = app.add_subcommand("tensor", "a ⊗ b");
  add_common(tensor_cmd, c_tensor, false);
  tensor_cmd->add_option("a", a_text)->required();
  tensor_cmd->add_option("b", b_text)->required();
  tensor_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(c_tensor.t);
      runner.print("tensor", field.to_string(),
                   to_string(tensor(parse_lin_morphism(a_text, field), parse_lin_morphism(b_text, field))), c_tensor.json);
    };
  });

  // ---- moebius ----
  Common c_moebius;
  std::string diagram_text;
  int moebius_m = -1, moebius_n = -1;
  bool prime = false;
  auto* moebius_cmd = app.add_subcommand("moebius", "x(f), or x'(f) with --prime");
  add_common(moebius_cmd, c_moebius, false);
  moebius_cmd->add_option("diagram", diagram_text)->required();
  moebius_cmd->add_option("--m", moebius_m, "upper points (inferred when omitted)");
  moebius_cmd->add_option("--n", moebius_n, "lower points (inferred when omitted)");
  moebius_cmd->add_flag("--prime", prime, "keep upper-only even blocks fixed");
  moebius_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(c_moebius.t);
      PartitionDiagram d = parse_diagram(diagram_text, moebius_m, moebius_n);
      LinMorphism x = prime ? moebius_x_prime(d, field) : moebius_x(d, field);
      runner.print(prime ? "moebius-prime" : "moebius", field.to_string(), to_string(x), c_moebius.json);
    };
  });

  // ---- hom-basis ----
  Common c_basis;
  int basis_m = 0, basis_n = 0;
  auto* basis_cmd = app.add_subcommand("hom-basis", "basis diagrams of Hom([m],[n]) in a class");
  add_common(basis_cmd, c_basis);
  basis_cmd->add_option("--m", basis_m)->required();
  basis_cmd->add_option("--n", basis_n)->required();
  basis_cmd->callback([&] {
    action = [&] {
      require_non_negative(basis_m, "--m");
      require_non_negative(basis_n, "--n");
      if (basis_m + basis_n > 10) throw Error("hom-basis is limited to m + n ≤ 10");
      DiagramClass cls = parse_diagram_class(c_basis.cls);
      const auto& b = hom_basis(cls, basis_m, basis_n);
      if (c_basis.json) {
        Json j;
        j["command"] = "hom-basis";
        j["class"] = std::string(to_string(cls));
        j["m"] = basis_m;
        j["n"] = basis_n;
        j["dimension"] = b.size();
        j["basis"] = Json::array();
        for (const auto& d : b.diagrams) j["basis"].push_back(to_string(d));
        runner.out() << j.dump() << "\n";
      } else {
        for (const auto& d : b.diagrams) runner.out() << to_string(d) << "\n";
      }
    };
  });

  // ---- cobordism-glue ----
  Common c_glue;
  std::string cob_g, cob_f, datum_name = "st";
  auto* glue_cmd = app.add_subcommand("cobordism-glue", "g ∘ f for cobordisms, reduced to normal form");
  add_common(glue_cmd, c_glue, false);
  glue_cmd->add_option("g", cob_g)->required();
  glue_cmd->add_option("f", cob_f)->required();
  glue_cmd->add_option("--datum", datum_name, "st or fibonacci")->capture_default_str();
  glue_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(c_glue.t);
      FrobeniusDatum datum = datum_name == "st"          ? st_datum(field)
                             : datum_name == "fibonacci" ? fibonacci_datum(field)
                                                         : throw Error("unknown datum '" + datum_name + "'");
      Cobordism g = parse_cobordism(cob_g), f = parse_cobordism(cob_f);
      runner.print("cobordism-glue", field.to_string(), to_string(glue(g, f, datum)), c_glue.json);
    };
  });

  // ---- check ----
  auto* check_cmd = app.add_subcommand("check", "run a bounded verification");
  check_cmd->require_subcommand(1);
  Common cc;
  int max_points = -1, samples = 200, max_word = 3, i_bound = 0, m_max = 3, j_max = 3, trace_max = 4;
  std::uint64_t seed = 1;
  std::string u_text, object_text, from_text, to_text, matrix_text, side = "left";

  auto add_check = [&](const char* name, const char* help) {
    auto* sub = check_cmd->add_subcommand(name, help);
    add_common(sub, cc);
    return sub;
  };
  // Resolved parameters go into the replay command so that defaults from the
  // environment do not change what a replay computes.
  auto replay_base = [&](const std::string& name, const std::string& cls) {
    std::vector<std::string> r{"check", name, "--t", cc.t, "--class", cls};
    if (cc.json) r.push_back("--json");
    return r;
  };
  auto with = [](std::vector<std::string> r, std::initializer_list<std::pair<const char*, std::string>> kv) {
    for (const auto& [k, v] : kv) {
      r.push_back(k);
      r.push_back(v);
    }
    return r;
  };

  auto* diag_cmd = add_check("diag", "(Diag): tensor injective on bases, through-unit factors");
  diag_cmd->add_option("--max-points", max_points);
  diag_cmd->callback([&] {
    action = [&] {
      if (max_points < 0) max_points = default_max_points();
      for (DiagramClass cls : parse_classes(cc.cls))
        runner.emit(check_diag(cls, max_points),
                    with(replay_base("diag", std::string(to_string(cls))), {{"--max-points", std::to_string(max_points)}}),
                    cc.json);
    };
  });

  auto* ex1_cmd = add_check("ex1", "(Ex1): ψ_{U,V} injective");
  ex1_cmd->add_option("--max-points", max_points);
  ex1_cmd->callback([&] {
    action = [&] {
      if (max_points < 0) max_points = default_max_points();
      FieldSpec field = FieldSpec::parse(cc.t);
      for (DiagramClass cls : parse_classes(cc.cls))
        runner.emit(check_ex1(cls, max_points, field),
                    with(replay_base("ex1", std::string(to_string(cls))), {{"--max-points", std::to_string(max_points)}}),
                    cc.json);
    };
  });

  auto* ex2_cmd = add_check("ex2", "(Ex2): sampled, plus the structural route");
  ex2_cmd->add_option("--max-points", max_points);
  ex2_cmd->add_option("--samples", samples)->capture_default_str();
  ex2_cmd->add_option("--seed", seed)->capture_default_str();
  ex2_cmd->callback([&] {
    action = [&] {
      if (max_points < 0) max_points = default_max_points();
      require_non_negative(samples, "--samples");
      FieldSpec field = FieldSpec::parse(cc.t);
      for (DiagramClass cls : parse_classes(cc.cls))
        runner.emit(check_ex2(cls, max_points, samples, seed, field),
                    with(replay_base("ex2", std::string(to_string(cls))),
                         {{"--max-points", std::to_string(max_points)},
                          {"--samples", std::to_string(samples)},
                          {"--seed", std::to_string(seed)}}),
                    cc.json);
    };
  });

  auto* uex_cmd = add_check("uex", "U = Uex: coequalizer test for u: U → 1");
  uex_cmd->add_option("--u", u_text, "u in the diagram grammar; default ε on [1] for All, the cap on [2] otherwise");
  uex_cmd->add_option("--max-word", max_word)->capture_default_str();
  uex_cmd->callback([&] {
    action = [&] {
      require_non_negative(max_word, "--max-word");
      FieldSpec field = FieldSpec::parse(cc.t);
      for (DiagramClass cls : parse_classes(cc.cls)) {
        std::string text = u_text.empty() ? (cls == DiagramClass::All ? "1" : "1 2") : u_text;
        LinMorphism u = parse_lin_morphism(text, field, -1, 0);
        runner.emit(check_uex(u, cls, max_word, field),
                    with(replay_base("uex", std::string(to_string(cls))), {{"--u", text}, {"--max-word", std::to_string(max_word)}}),
                    cc.json);
      }
    };
  });

  auto* split_cmd = add_check("split", "splitting object: X ⊗ f (or f ⊗ X) is split");
  split_cmd->add_option("--object", object_text, "X, e.g. [0]@id⊕[1]@e_1'")->required();
  split_cmd->add_option("--from", from_text, "domain of f")->required();
  split_cmd->add_option("--to", to_text, "codomain of f")->required();
  split_cmd->add_option("--matrix", matrix_text, "entries of f, e.g. {1 * 1}")->required();
  split_cmd->add_option("--side", side, "left or right")->capture_default_str();
  split_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(cc.t);
      if (side != "left" && side != "right") throw Error("--side must be left or right");
      DiagramClass cls = parse_diagram_class(cc.cls);
      KarObject x = parse_kar_object(object_text, cls, field);
      KarMorphism f = parse_kar_matrix(matrix_text, parse_kar_object(from_text, cls, field),
                                       parse_kar_object(to_text, cls, field), field);
      runner.emit(check_splitting_object(x, f, side == "left" ? Side::Left : Side::Right, field),
                  with(replay_base("split", std::string(to_string(cls))),
                       {{"--object", object_text}, {"--from", from_text}, {"--to", to_text}, {"--matrix", matrix_text}, {"--side", side}}),
                  cc.json);
    };
  });

  auto* rep_h_cmd = add_check("representable-h", "S_t(-,1) on C_i represented by ⊕_{j≤i} X_j");
  rep_h_cmd->add_option("--i", i_bound)->capture_default_str();
  rep_h_cmd->add_option("--m-max", m_max)->capture_default_str();
  rep_h_cmd->callback([&] {
    action = [&] {
      require_non_negative(i_bound, "--i");
      require_non_negative(m_max, "--m-max");
      FieldSpec field = FieldSpec::parse(cc.t);
      runner.emit(representable_H(i_bound, m_max, field),
                  with(replay_base("representable-h", "EvenBlocks"), {{"--i", std::to_string(i_bound)}, {"--m-max", std::to_string(m_max)}}),
                  cc.json);
    };
  });

  auto* rep_s_cmd = add_check("representable-sprime", "S_t(-,1) on S'_t represented by X_0 ⊕ X_1");
  rep_s_cmd->add_option("--m-max", m_max)->capture_default_str();
  rep_s_cmd->callback([&] {
    action = [&] {
      require_non_negative(m_max, "--m-max");
      FieldSpec field = FieldSpec::parse(cc.t);
      runner.emit(representable_Sprime(m_max, field),
                  with(replay_base("representable-sprime", "EvenManyOddBlocks"), {{"--m-max", std::to_string(m_max)}}),
                  cc.json);
    };
  });

  for (auto [name, lemma] : {std::pair{"lemma-absorption", Lemma::Absorption}, std::pair{"lemma-computation", Lemma::ComputationH}}) {
    auto* sub = add_check(name, lemma == Lemma::Absorption ? "x_j g = 0 for g with two lower points in a block"
                                                           : "p_j x_j e_j g = x'(f)");
    sub->add_option("--j-max", j_max)->capture_default_str();
    sub->add_option("--m-max", m_max)->capture_default_str();
    sub->callback([&, name = std::string(name), lemma = lemma] {
      action = [&, name, lemma] {
        require_non_negative(j_max, "--j-max");
        require_non_negative(m_max, "--m-max");
        FieldSpec field = FieldSpec::parse(cc.t);
        runner.emit(verify_lemma(lemma, j_max, m_max, field),
                    with(replay_base(name, "All"), {{"--j-max", std::to_string(j_max)}, {"--m-max", std::to_string(m_max)}}),
                    cc.json);
      };
    });
  }

  auto* cob_cmd = add_check("crosscheck-cob", "cobordism gluing against partition composition");
  cob_cmd->add_option("--max-points", max_points);
  cob_cmd->add_option("--trace-max", trace_max)->capture_default_str();
  cob_cmd->callback([&] {
    action = [&] {
      if (max_points < 0) max_points = std::min(default_max_points(), 5);
      require_non_negative(trace_max, "--trace-max");
      FieldSpec field = FieldSpec::parse(cc.t);
      runner.emit(check_crosscheck_cob(max_points, trace_max, field),
                  with(replay_base("crosscheck-cob", "All"),
                       {{"--max-points", std::to_string(max_points)}, {"--trace-max", std::to_string(trace_max)}}),
                  cc.json);
    };
  });

  // ---- fp ----
  auto* fp_cmd = app.add_subcommand("fp", "finitely presented functors");
  fp_cmd->require_subcommand(1);
  Common cf;
  std::string m_text, n_text, alpha_text, omega_text, eps_object = "[1]@id", eps_matrix = "{1 * 1}";
  auto add_fp = [&](const char* name, const char* help) {
    auto* sub = fp_cmd->add_subcommand(name, help);
    add_common(sub, cf);
    return sub;
  };
  auto square_args = [&](CLI::App* sub) {
    sub->add_option("--src", m_text, "source presentation coker( ... )")->required();
    sub->add_option("--dst", n_text, "target presentation coker( ... )")->required();
    sub->add_option("--alpha", alpha_text, "matrix on generators")->required();
    sub->add_option("--omega", omega_text, "matrix on relations; zero when omitted");
  };
  auto read_square = [&](const FieldSpec& field, DiagramClass cls) {
    FpObject m = parse_fp_object(m_text, cls, field), n = parse_fp_object(n_text, cls, field);
    KarMorphism alpha = parse_kar_matrix(alpha_text, m.generators(), n.generators(), field);
    KarMorphism omega = omega_text.empty() ? kar_zero(m.relations(), n.relations())
                                           : parse_kar_matrix(omega_text, m.relations(), n.relations(), field);
    return fp_morphism(m, n, alpha, omega, field);
  };

  auto* fp_hom_cmd = add_fp("hom", "Hom(M, N) between presented functors");
  fp_hom_cmd->add_option("M", m_text)->required();
  fp_hom_cmd->add_option("N", n_text)->required();
  fp_hom_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(cf.t);
      DiagramClass cls = parse_diagram_class(cf.cls);
      FpHom h = fp_hom(parse_fp_object(m_text, cls, field), parse_fp_object(n_text, cls, field), field);
      if (cf.json) {
        Json j;
        j["command"] = "fp hom";
        j["t"] = field.to_string();
        j["dimension"] = h.dimension();
        j["dim_r"] = h.dim_r;
        j["dim_r_prime"] = h.dim_r_prime;
        j["basis"] = Json::array();
        for (const auto& f : h.basis) j["basis"].push_back(to_string(f.alpha, field));
        runner.out() << j.dump() << "\n";
      } else {
        runner.out() << "dimension " << h.dimension() << "\n";
        for (const auto& f : h.basis) runner.out() << "  " << to_string(f.alpha, field) << "\n";
      }
    };
  });

  auto* fp_coker_cmd = add_fp("coker", "cokernel of a square M → N");
  square_args(fp_coker_cmd);
  fp_coker_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(cf.t);
      runner.print("fp coker", field.to_string(), to_string(fp_cokernel(read_square(field, parse_diagram_class(cf.cls))), field), cf.json);
    };
  });

  auto* fp_kernel_cmd = add_fp("kernel", "kernel of a square M → N via weak kernels");
  square_args(fp_kernel_cmd);
  fp_kernel_cmd->add_option("--split-object", eps_object, "S with a split epi S → 1")->capture_default_str();
  fp_kernel_cmd->add_option("--eps", eps_matrix, "matrix of S → 1")->capture_default_str();
  fp_kernel_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(cf.t);
      DiagramClass cls = parse_diagram_class(cf.cls);
      KarMorphism eps = parse_kar_matrix(eps_matrix, parse_kar_object(eps_object, cls, field), kar_word(0, cls, field), field);
      runner.print("fp kernel", field.to_string(), to_string(fp_kernel(read_square(field, cls), eps, field).object, field), cf.json);
    };
  });

  std::string embed_text;
  auto* fp_embed_cmd = add_fp("embed", "presentation of an object via the unit presentation on [1]");
  fp_embed_cmd->add_option("A", embed_text)->required();
  fp_embed_cmd->callback([&] {
    action = [&] {
      FieldSpec field = FieldSpec::parse(cf.t);
      DiagramClass cls = parse_diagram_class(cf.cls);
      FpObject unit = fp_unit_presentation(cls, field);
      runner.print("fp embed", field.to_string(), to_string(fp_embed(parse_kar_object(embed_text, cls, field), unit), field), cf.json);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "usage error: " << e.what() << "\n" << "run 'diagcat --help' for usage\n";
    return 2;
  }
  try {
    if (action) action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return runner.failed() ? 1 : 0;
}

}  // namespace diagcat
