// Command-line front end. Exit codes: 0 completed, 1 usage error, 2 no verdict.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lambek/countermodel.hpp"
#include "lambek/json_io.hpp"
#include "lambek/kprover.hpp"
#include "lambek/prover.hpp"
#include "lambek/transform.hpp"

using namespace lambek;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kUnknown = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AssumptionSet read_assumptions(const std::string& path) {
  AssumptionSet out;
  if (path.empty()) return out;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_sequent(line));
  }
  return out;
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

/// A sequent when the text has "=>", otherwise the formula as "=> A".
Sequent sequent_or_formula(const std::string& text) {
  if (text.find("=>") != std::string::npos) return parse_sequent(text);
  return Sequent::empty(parse_lambek(text));
}

std::string model_text(const KripkeModel& m) {
  std::ostringstream o;
  o << "states: ";
  for (const auto& s : m.states) o << s << ' ';
  o << "\nR: ";
  for (auto [a, b] : m.rel) o << '(' << m.states[a] << ',' << m.states[b] << ") ";
  o << '\n';
  for (const auto& [p, ws] : m.val) {
    o << "V(" << p << "): ";
    for (int w : ws) o << m.states[w] << ' ';
    o << '\n';
  }
  return o.str();
}

std::string model_text(const TernaryModel& m) {
  std::ostringstream o;
  o << "states: ";
  for (const auto& s : m.states) o << s << ' ';
  o << "\nR: ";
  for (const auto& t : m.rel3) o << '(' << m.states[t[0]] << ',' << m.states[t[1]] << ',' << m.states[t[2]] << ") ";
  o << '\n';
  if (m.rel2) {
    o << "R2: ";
    for (auto [a, b] : *m.rel2) o << '(' << m.states[a] << ',' << m.states[b] << ") ";
    o << '\n';
  }
  if (m.unit) o << "unit: " << m.states[*m.unit] << '\n';
  for (const auto& [p, ws] : m.val) {
    o << "V(" << p << "): ";
    for (int w : ws) o << m.states[w] << ' ';
    o << '\n';
  }
  return o.str();
}

struct Options {
  std::string format = "json";
  std::uint64_t seed = 1;
};

void emit(const Options& o, const Json& j, const std::string& text) {
  if (o.format == "text")
    std::cout << text;
  else
    std::cout << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof search, model checking and reductions for nonassociative Lambek calculi"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", opt.seed, "Seed for sampled models");

  // translate
  auto* tr = app.add_subcommand("translate", "Apply a translation");
  std::string tr_to, tr_input, tr_assume;
  tr->add_option("--to", tr_to, "dagger (modal formula), ddagger or section (sequent), pipeline (modal formula)")
      ->required()
      ->check(CLI::IsMember({"dagger", "ddagger", "section", "pipeline"}));
  tr->add_option("--assumptions", tr_assume, "Assumption file");
  tr->add_option("input", tr_input)->required();

  // prove
  auto* pv = app.add_subcommand("prove", "Search for a derivation or countermodel");
  std::string pv_system = "bfnl-star", pv_goal, pv_assume, pv_budget, pv_proof_format = "json";
  bool pv_recheck = false;
  pv->add_option("--system", pv_system);
  pv->add_option("--assumptions", pv_assume, "Assumption file");
  pv->add_option("--budget", pv_budget, "depth:N,goals:N,cutsize:N,ms:N");
  pv->add_flag("--recheck", pv_recheck, "Serialize the proof, read it back and check it");
  pv->add_option("--proof-format", pv_proof_format)->check(CLI::IsMember({"json", "text"}));
  pv->add_option("goal", pv_goal)->required();

  // check
  auto* ck = app.add_subcommand("check", "Check a derivation file");
  std::string ck_system = "bfnl-star", ck_file, ck_assume;
  ck->add_option("--system", ck_system);
  ck->add_option("--assumptions", ck_assume, "Assumption file");
  ck->add_option("file", ck_file)->required();

  // modelcheck
  auto* mc = app.add_subcommand("modelcheck", "Evaluate a formula or sequent in a model file");
  std::string mc_file, mc_input, mc_state;
  mc->add_option("model", mc_file)->required();
  mc->add_option("input", mc_input)->required();
  mc->add_option("--state", mc_state);

  // countermodel
  auto* cm = app.add_subcommand("countermodel", "Search for a falsifying model");
  std::string cm_goal, cm_assume;
  bool cm_modal = false;
  CountermodelBounds cm_bounds;
  cm->add_option("goal", cm_goal)->required();
  cm->add_option("--assumptions", cm_assume, "Assumption file");
  cm->add_flag("--modal", cm_modal, "Read the goal as a modal formula and search Kripke models");
  cm->add_option("--states", cm_bounds.exhaustive_states, "Exhaustive search size");
  cm->add_option("--samples", cm_bounds.samples, "Sampled models");
  cm->add_option("--max-states", cm_bounds.sampling.max_states, "Largest sampled model");

  // pipeline
  auto* pl = app.add_subcommand("pipeline", "Reduce a modal formula to a distributive problem");
  std::string pl_input, pl_budget;
  bool pl_run = false;
  pl->add_option("input", pl_input)->required();
  pl->add_flag("--run-prover", pl_run);
  pl->add_option("--budget", pl_budget, "depth:N,goals:N,cutsize:N,ms:N");

  // kdecide
  auto* kd = app.add_subcommand("kdecide", "Decide a modal formula in K");
  std::string kd_input;
  kd->add_option("input", kd_input)->required();

  // buildmodel
  auto* bm = app.add_subcommand("buildmodel", "Ternary model from a Kripke model file");
  std::string bm_file, bm_variant = "plain";
  bm->add_option("file", bm_file)->required();
  bm->add_option("--variant", bm_variant)->check(CLI::IsMember({"plain", "exchange", "unit"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*tr) {
      Json out;
      std::string text;
      const auto phi = read_assumptions(tr_assume);
      if (tr_to == "dagger") {
        auto d = dagger(parse_modal(tr_input));
        out = {{"input", tr_input}, {"output", render(d)}, {"ast", to_json(d)}};
        text = render(d) + "\n";
      } else if (tr_to == "ddagger") {
        auto e = ddagger_problem(sequent_or_formula(tr_input), phi);
        ProblemBundle b{"bdfnl-star", e.goal, e.assumptions, {"ddagger"}};
        out = to_json(b);
        text = render(e.goal) + "\n";
      } else if (tr_to == "section") {
        auto e = section_embed(sequent_or_formula(tr_input), phi);
        ProblemBundle b{"dfnl-star", e.goal, e.assumptions, {"section"}};
        out = to_json(b);
        text = render(e.goal) + "\n";
      } else {
        auto p = pipeline_k_to_dfnl(parse_modal(tr_input));
        ProblemBundle b{p.system.name, p.goal, p.assumptions, p.provenance};
        out = to_json(b);
        text = render(p.goal) + "\n";
      }
      emit(opt, out, text);
      return kOk;
    }

    if (*pv) {
      SearchBudget budget = pv_budget.empty() ? SearchBudget{} : parse_budget(pv_budget);
      const auto sys = presets::by_name(pv_system);
      const auto phi = read_assumptions(pv_assume);
      const auto goal = parse_sequent(pv_goal);
      Prover prover(sys, phi, budget);
      auto r = prover.derive(goal);
      Json out{{"system", sys.name}, {"goal", render(goal)}, {"status", status_name(r.status)}, {"report", r.report}};
      std::string text = std::string(status_name(r.status)) + ": " + r.report + "\n";
      if (r.proved()) {
        out["proof"] = to_json(r.proof);
        out["size"] = derivation_size(r.proof);
        if (pv_recheck) {
          auto back = derivation_from_json(Json::parse(out["proof"].dump()));
          auto c = check_derivation(sys, phi, back);
          out["recheck"] = c.ok && back->conclusion == goal;
          if (!c.ok) out["recheck_error"] = c.diagnostic;
          text += std::string("recheck: ") + (c.ok ? "ok" : "FAILED " + c.diagnostic) + "\n";
        }
        text += render_derivation(r.proof);
        if (pv_proof_format == "text") out["proof"] = render_derivation(r.proof);
      } else if (r.refuted()) {
        out["model"] = to_json(*r.model);
        out["state"] = r.model->states[r.state];
        text += model_text(*r.model) + "falsified at " + r.model->states[r.state] + "\n";
      }
      emit(opt, out, text);
      return r.status == Status::Unknown ? kUnknown : kOk;
    }

    if (*ck) {
      const auto sys = presets::by_name(ck_system);
      const auto d = derivation_from_json(read_json(ck_file));
      auto c = check_derivation(sys, read_assumptions(ck_assume), d);
      Json out{{"valid", c.ok}, {"conclusion", render(d->conclusion)}};
      if (!c.ok) out["error"] = c.diagnostic;
      emit(opt, out, c.ok ? "valid: " + render(d->conclusion) + "\n" : "invalid: " + c.diagnostic + "\n");
      return kOk;
    }

    if (*mc) {
      const Json mj = read_json(mc_file);
      Json out;
      std::string text;
      auto report = [&](const StateSet& ext, const std::vector<std::string>& states) {
        Json holds = Json::array();
        for (std::size_t i = 0; i < ext.size(); ++i)
          if (ext[i]) holds.push_back(states[i]);
        out = {{"input", mc_input}, {"holds_at", holds}};
        if (!mc_state.empty()) {
          bool v = false;
          for (std::size_t i = 0; i < ext.size(); ++i)
            if (states[i] == mc_state) v = ext[i];
          out["state"] = mc_state;
          out["holds"] = v;
          text = std::string(v ? "true" : "false") + "\n";
        } else {
          out["valid"] = std::all_of(ext.begin(), ext.end(), [](char c) { return c != 0; });
          text = "holds at: " + holds.dump() + "\n";
        }
      };
      if (is_ternary_json(mj)) {
        auto m = ternary_from_json(mj);
        if (!mc_state.empty()) m.index_of(mc_state);
        report(sequent_extension(m, sequent_or_formula(mc_input)), m.states);
      } else {
        auto m = kripke_from_json(mj);
        if (!mc_state.empty()) m.index_of(mc_state);
        report(extension(m, parse_modal(mc_input)), m.states);
      }
      emit(opt, out, text);
      return kOk;
    }

    if (*cm) {
      cm_bounds.sampling.seed = opt.seed;
      if (cm_bounds.sampling.max_states > cm_bounds.sampling.state_cap) cm_bounds.sampling.state_cap = cm_bounds.sampling.max_states;
      if (cm_bounds.exhaustive_states < 0 || cm_bounds.exhaustive_states > kExhaustiveTernaryCap)
        throw UsageError("--states must lie in [0, " + std::to_string(kExhaustiveTernaryCap) + "]");
      Json out;
      std::string text;
      bool found = false;
      if (cm_modal) {
        if (auto r = find_countermodel(parse_modal(cm_goal), cm_bounds)) {
          found = true;
          out = {{"found", true}, {"model", to_json(r->model)}, {"state", r->model.states[r->state]}};
          text = model_text(r->model) + "falsified at " + r->model.states[r->state] + "\n";
        }
      } else if (auto r = find_countermodel(parse_sequent(cm_goal), read_assumptions(cm_assume), cm_bounds)) {
        found = true;
        out = {{"found", true}, {"model", to_json(r->model)}, {"state", r->model.states[r->state]}};
        text = model_text(r->model) + "falsified at " + r->model.states[r->state] + "\n";
      }
      if (!found) {
        out = {{"found", false}};
        text = "no countermodel within bounds\n";
      }
      emit(opt, out, text);
      return found ? kOk : kUnknown;
    }

    if (*pl) {
      auto p = pipeline_k_to_dfnl(parse_modal(pl_input));
      ProblemBundle b{p.system.name, p.goal, p.assumptions, p.provenance};
      Json out = to_json(b);
      out["dagger"] = render(p.dagger_image);
      out["ddagger_goal"] = render(p.ddagger_stage.goal);
      out["size"] = p.output_size();
      std::string text = "dagger:  " + render(p.dagger_image) + "\nddagger: " + render(p.ddagger_stage.goal) +
                         "\nsection: " + render(p.goal) + "\nassumptions: " + std::to_string(p.assumptions.size()) + "\n";
      int code = kOk;
      if (pl_run) {
        SearchBudget budget = pl_budget.empty() ? SearchBudget{} : parse_budget(pl_budget);
        auto r = derive(p.system, p.assumptions, p.goal, budget);
        out["status"] = status_name(r.status);
        out["report"] = r.report;
        if (r.proved()) out["size_of_proof"] = derivation_size(r.proof);
        if (r.refuted()) {
          out["model"] = to_json(*r.model);
          out["state"] = r.model->states[r.state];
        }
        text += std::string(status_name(r.status)) + ": " + r.report + "\n";
        if (r.status == Status::Unknown) code = kUnknown;
      }
      emit(opt, out, text);
      return code;
    }

    if (*kd) {
      auto a = parse_modal(kd_input);
      auto v = k_decide(a);
      Json out{{"input", kd_input}, {"verdict", v.valid ? "Valid" : "Invalid"}, {"tableau_nodes", v.tableau_nodes}};
      std::string text = std::string(v.valid ? "Valid" : "Invalid") + "\n";
      if (!v.valid) {
        out["model"] = to_json(*v.countermodel);
        out["root"] = v.countermodel->states[v.root];
        text += model_text(*v.countermodel) + "root: " + v.countermodel->states[v.root] + "\n";
      }
      emit(opt, out, text);
      return kOk;
    }

    if (*bm) {
      auto k = kripke_from_json(read_json(bm_file));
      TernaryModel j;
      if (bm_variant == "plain") j = build_ternary_model(k);
      else if (bm_variant == "exchange") j = build_ternary_model_exchange(k);
      else j = extend_with_unit(build_ternary_model(k), k);
      emit(opt, to_json(j), model_text(j));
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const JsonError& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {  // unknown system, bad budget, ill-formed input
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ModelError& e) {
    std::cerr << "bad model: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
