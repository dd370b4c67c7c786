#include "witnesskit/cli.hpp"

#include "witnesskit/json_io.hpp"
#include "witnesskit/rng.hpp"
#include "witnesskit/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace witnesskit {

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("WITNESSKIT_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<int> parse_ints(const std::string& csv) {
  std::vector<int> out;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content << "\n";
  else
    write_text_file(out_path, content);
}

json run_header(std::uint64_t seed) {
  return {{"version", kVersion},
          {"seed", seed},
          {"tolerances",
           {{"hermiticity", tol::hermiticity},
            {"trace", tol::trace},
            {"eigen", tol::eigen},
            {"cert", tol::cert},
            {"ppt", tol::ppt}}}};
}

Witness build_witness_from_flags(const std::string& kind, int d, int n, const std::string& lambda_csv,
                                 const std::string& mu_csv, int d1, int d2,
                                 const std::string& combo_csv, const std::string& in_path) {
  if (kind == "canonical") {
    if (!lambda_csv.empty()) return canonical_witness(d, parse_doubles(lambda_csv));
    return canonical_witness_unit(d, n);
  }
  if (kind == "partition") return partition_witness(d, parse_ints(mu_csv));
  if (kind == "embedded") {
    const Combination combo = make_combination(d1, d2, parse_ints(combo_csv));
    std::vector<double> lam =
        lambda_csv.empty() ? std::vector<double>(n, 1.0) : parse_doubles(lambda_csv);
    return embedded_witness(d1, d2, combo, lam);
  }
  if (kind == "extended") return extended_witness(d);
  if (kind == "from-U") {
    const SkewMatrix u = skew_from_json(json::parse(read_text_file(in_path)));
    return witness_from_U(u);
  }
  throw precondition_error("build-witness: unknown kind " + kind);
}

struct FamilyDraw {
  BipartiteOperator state;          // normalized except extended
  double unnorm_trace_value = 0.0;  // Tr(W rho) on the natural scale
  double normalization = 1.0;
  ConditionReport conditions;
  json provenance;
};

// One sampled member of the requested family with the matching witness trace.
FamilyDraw draw_family(const std::string& family, const Witness& w, int d, int n,
                       const std::vector<int>& mu, int d1, int d2, const std::vector<int>& combo,
                       double a0, DrawMode mode, std::mt19937_64& rng) {
  FamilyDraw out;
  if (family == "canonical") {
    const FamilyParams p = sample_family_params(d, n, a0, rng, mode);
    out.state = build_family_state(p);
    out.normalization = family_normalization(p);
    out.conditions = check_conditions(p);
    out.provenance = {{"family", family}, {"params", family_params_to_json(p)}};
  } else if (family == "partition") {
    const PartitionParams p = sample_partition_params(d, mu, a0, rng, mode);
    out.state = build_partition_state(p);
    out.normalization = partition_normalization(p);
    out.conditions = check_partition_conditions(p);
    out.provenance = {{"family", family}, {"params", partition_params_to_json(p)}};
  } else if (family == "embedded") {
    const Combination c = make_combination(d1, d2, combo);
    const EmbeddedParams p = sample_embedded_params(d1, d2, c, a0, rng, mode);
    out.state = build_embedded_state(p);
    out.normalization = embedded_normalization(p);
    out.conditions = check_embedded_conditions(p);
    out.provenance = {{"family", family}, {"params", embedded_params_to_json(p)}};
  } else if (family == "extended") {
    ExtendedParams p = sample_extended_params(d, a0, rng, mode);
    const Mat unnorm = extended_operator(p);
    out.unnorm_trace_value = trace_product(w.op.m, unnorm);
    out.normalization = extended_normalization(p);
    out.state = {d, d, Mat(unnorm / out.normalization)};
    out.conditions = check_extended_conditions(p);
    out.provenance = {{"family", family}, {"params", extended_params_to_json(p)}};
  } else {
    throw precondition_error("unknown family " + family);
  }
  if (family != "extended") out.unnorm_trace_value = expectation(w.op, out.state);
  out.provenance["conditions"] = {{"positivity_ok", out.conditions.positivity_ok},
                                  {"ppt_ok", out.conditions.ppt_ok}};
  out.provenance["normalization"] = out.normalization;
  return out;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
  CLI::App app{"skew-generator entanglement witness toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = default_seed();
  app.add_option("--seed", seed, "RNG seed (default: WITNESSKIT_SEED or 0)");

  // ---- build-witness ----
  auto* bw = app.add_subcommand("build-witness", "construct a witness and write it as JSON");
  std::string bw_kind, bw_lambda, bw_mu, bw_combo, bw_in, bw_out;
  int bw_d = 4, bw_n = 2, bw_d1 = 4, bw_d2 = 5;
  bw->add_option("--kind", bw_kind, "canonical|partition|embedded|extended|from-U")->required();
  bw->add_option("--d", bw_d, "dimension");
  bw->add_option("--n", bw_n, "block count (unit factors)");
  bw->add_option("--lambda", bw_lambda, "comma-separated invariant factors");
  bw->add_option("--mu", bw_mu, "comma-separated partition parts");
  bw->add_option("--d1", bw_d1, "first factor dimension");
  bw->add_option("--d2", bw_d2, "second factor dimension");
  bw->add_option("--combo", bw_combo, "comma-separated subspace indices");
  bw->add_option("--in", bw_in, "skew generator JSON (from-U)");
  bw->add_option("--out", bw_out, "output path (default stdout)");

  // ---- build-state ----
  auto* bs = app.add_subcommand("build-state", "construct a family state and write it as JSON");
  std::string bs_family, bs_mu, bs_combo, bs_mode = "boundary", bs_params, bs_out;
  int bs_d = 4, bs_n = 2, bs_d1 = 4, bs_d2 = 5;
  double bs_a0 = 1.0, bs_ker = 0.0;
  bool bs_normalize = false;
  bs->add_option("--family", bs_family, "canonical|partition|embedded|extended")->required();
  bs->add_option("--d", bs_d, "dimension");
  bs->add_option("--n", bs_n, "block count");
  bs->add_option("--mu", bs_mu, "partition parts");
  bs->add_option("--d1", bs_d1, "first factor dimension");
  bs->add_option("--d2", bs_d2, "second factor dimension");
  bs->add_option("--combo", bs_combo, "subspace indices");
  bs->add_option("--a0", bs_a0, "shared weight");
  bs->add_option("--ker-weight", bs_ker, "kernel-sector weight (embedded)");
  bs->add_option("--mode", bs_mode, "boundary|valid|npt (sampled draws use --seed)");
  bs->add_option("--params", bs_params, "explicit params JSON (overrides --mode)");
  bs->add_flag("--normalize", bs_normalize, "normalize the extended family operator");
  bs->add_option("--out", bs_out, "output path");

  // ---- verify-witness ----
  auto* vw = app.add_subcommand("verify-witness", "product-state minimization certificate");
  std::string vw_in, vw_field = "complex", vw_out;
  int vw_restarts = 200, vw_iters = 500;
  double vw_tol = 1e-12, vw_cert = tol::cert;
  vw->add_option("--in", vw_in, "witness JSON")->required();
  vw->add_option("--restarts", vw_restarts, "see-saw restarts");
  vw->add_option("--max-iters", vw_iters, "iteration cap per restart");
  vw->add_option("--tol", vw_tol, "convergence tolerance");
  vw->add_option("--cert-tol", vw_cert, "certification tolerance");
  vw->add_option("--field", vw_field, "complex|real");
  vw->add_option("--out", vw_out, "output path");

  // ---- classify ----
  auto* cl = app.add_subcommand("classify", "detection window classification");
  std::string cl_witness, cl_state, cl_out;
  cl->add_option("--witness", cl_witness, "witness JSON")->required();
  cl->add_option("--state", cl_state, "state JSON")->required();
  cl->add_option("--out", cl_out, "output path");

  // ---- sweep ----
  auto* sw = app.add_subcommand("sweep", "sampled family draws against the matching witness");
  std::string sw_family, sw_mu, sw_combo, sw_mode = "valid", sw_out;
  int sw_d = 4, sw_n = 2, sw_d1 = 4, sw_d2 = 5, sw_draws = 100;
  double sw_a0 = 1.0;
  sw->add_option("--family", sw_family, "canonical|partition|embedded|extended")->required();
  sw->add_option("--d", sw_d, "dimension");
  sw->add_option("--n", sw_n, "block count");
  sw->add_option("--mu", sw_mu, "partition parts");
  sw->add_option("--d1", sw_d1, "first factor dimension");
  sw->add_option("--d2", sw_d2, "second factor dimension");
  sw->add_option("--combo", sw_combo, "subspace indices");
  sw->add_option("--a0", sw_a0, "shared weight");
  sw->add_option("--draws", sw_draws, "number of draws");
  sw->add_option("--mode", sw_mode, "valid|npt|boundary");
  sw->add_option("--out", sw_out, "output path");

  // ---- decompose ----
  auto* dc = app.add_subcommand("decompose", "canonical block form of a skew generator");
  std::string dc_in, dc_out;
  dc->add_option("--in", dc_in, "skew JSON")->required();
  dc->add_option("--out", dc_out, "output path");

  // ---- enumerate ----
  auto* en = app.add_subcommand("enumerate", "partition / combination listings");
  int en_partitions = 0;
  std::vector<int> en_combos;
  std::string en_out;
  en->add_option("--partitions", en_partitions, "list partitions of n");
  en->add_option("--combos", en_combos, "list combinations: d2 d1")->expected(2);
  en->add_option("--out", en_out, "output path");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cout << app.help() << std::endl;
      return 0;
    }
    std::cerr << e.what() << std::endl;
    return 2;
  }

  try {
    if (bw->parsed()) {
      const Witness w =
          build_witness_from_flags(bw_kind, bw_d, bw_n, bw_lambda, bw_mu, bw_d1, bw_d2, bw_combo, bw_in);
      json j = witness_to_json(w);
      j["version"] = kVersion;
      emit(bw_out, j.dump(2));
      return 0;
    }

    if (bs->parsed()) {
      StateFile sf;
      json prov;
      if (bs_family == "canonical") {
        FamilyParams p;
        if (!bs_params.empty())
          p = family_params_from_json(json::parse(read_text_file(bs_params)));
        else if (bs_mode == "boundary")
          p = saturating_family_params(bs_d, bs_n, bs_a0);
        else {
          auto rng = substream(seed, 0);
          p = sample_family_params(bs_d, bs_n, bs_a0, rng,
                                   bs_mode == "npt" ? DrawMode::NptWindow : DrawMode::Valid);
        }
        sf.op = build_family_state(p);
        const ConditionReport rep = check_conditions(p);
        prov = {{"family", "canonical"},
                {"params", family_params_to_json(p)},
                {"conditions", condition_report_to_json(rep)},
                {"normalization", family_normalization(p)}};
      } else if (bs_family == "partition") {
        const auto mu = parse_ints(bs_mu);
        PartitionParams p;
        if (!bs_params.empty())
          p = partition_params_from_json(json::parse(read_text_file(bs_params)));
        else if (bs_mode == "boundary")
          p = saturating_partition_params(bs_d, mu, bs_a0);
        else {
          auto rng = substream(seed, 0);
          p = sample_partition_params(bs_d, mu, bs_a0, rng,
                                      bs_mode == "npt" ? DrawMode::NptWindow : DrawMode::Valid);
        }
        sf.op = build_partition_state(p);
        prov = {{"family", "partition"},
                {"params", partition_params_to_json(p)},
                {"conditions", condition_report_to_json(check_partition_conditions(p))},
                {"normalization", partition_normalization(p)}};
      } else if (bs_family == "embedded") {
        const Combination c = make_combination(bs_d1, bs_d2, parse_ints(bs_combo));
        EmbeddedParams p;
        if (!bs_params.empty())
          p = embedded_params_from_json(json::parse(read_text_file(bs_params)));
        else if (bs_mode == "boundary")
          p = saturating_embedded_params(bs_d1, bs_d2, c, bs_a0, bs_ker);
        else {
          auto rng = substream(seed, 0);
          p = sample_embedded_params(bs_d1, bs_d2, c, bs_a0, rng,
                                     bs_mode == "npt" ? DrawMode::NptWindow : DrawMode::Valid);
        }
        sf.op = build_embedded_state(p);
        prov = {{"family", "embedded"},
                {"params", embedded_params_to_json(p)},
                {"conditions", condition_report_to_json(check_embedded_conditions(p))},
                {"normalization", embedded_normalization(p)}};
      } else if (bs_family == "extended") {
        ExtendedParams p;
        if (!bs_params.empty())
          p = extended_params_from_json(json::parse(read_text_file(bs_params)));
        else if (bs_mode == "boundary")
          p = saturating_extended_params(bs_d, bs_a0);
        else {
          auto rng = substream(seed, 0);
          p = sample_extended_params(bs_d, bs_a0, rng,
                                     bs_mode == "npt" ? DrawMode::NptWindow : DrawMode::Valid);
        }
        p.normalize = bs_normalize;
        sf.op = build_extended_state(p);
        prov = {{"family", "extended"},
                {"params", extended_params_to_json(p)},
                {"conditions", condition_report_to_json(check_extended_conditions(p))},
                {"normalization", extended_normalization(p)}};
      } else {
        throw precondition_error("build-state: unknown family " + bs_family);
      }
      sf.provenance = prov;
      json j = state_file_to_json(sf);
      j["version"] = kVersion;
      j["seed"] = seed;
      emit(bs_out, j.dump(2));
      return 0;
    }

    if (vw->parsed()) {
      Witness w = witness_from_json(json::parse(read_text_file(vw_in)));
      SeeSawConfig cfg;
      cfg.restarts = vw_restarts;
      cfg.max_iters = vw_iters;
      cfg.conv_tol = vw_tol;
      cfg.cert_tol = vw_cert;
      cfg.seed = seed;
      cfg.field = (vw_field == "real") ? Field::Real : Field::Complex;
      const CertReport rep = certify(w, cfg);
      json j = run_header(seed);
      j["field"] = vw_field;
      j["restarts"] = vw_restarts;
      j["witness_provenance"] = provenance_to_json(w.prov);
      j["report"] = cert_report_to_json(rep);
      emit(vw_out, j.dump(2));
      return rep.is_ew ? 0 : 1;
    }

    if (cl->parsed()) {
      const Witness w = witness_from_json(json::parse(read_text_file(cl_witness)));
      const StateFile sf = state_file_from_json(json::parse(read_text_file(cl_state)));
      const DetectionReport rep = classify_detection(w, sf.op);
      json j = run_header(seed);
      j["witness_provenance"] = provenance_to_json(w.prov);
      j["state_provenance"] = sf.provenance;
      j["report"] = detection_report_to_json(rep);
      emit(cl_out, j.dump(2));
      return 0;
    }

    if (sw->parsed()) {
      const auto mu = sw_mu.empty() ? std::vector<int>{} : parse_ints(sw_mu);
      const auto combo = sw_combo.empty() ? std::vector<int>{} : parse_ints(sw_combo);
      Witness w;
      std::optional<double> bound, floor_bound;
      if (sw_family == "canonical") {
        w = canonical_witness_unit(sw_d, sw_n);
        bound = canonical_detection_bound(sw_d, sw_n);
        floor_bound = canonical_npt_floor(sw_d, sw_n);
      } else if (sw_family == "partition") {
        w = partition_witness(sw_d, mu);
        bound = partition_detection_bound(sw_d, mu);
        floor_bound = partition_npt_floor(sw_d, mu);
      } else if (sw_family == "embedded") {
        w = embedded_witness(sw_d1, sw_d2, make_combination(sw_d1, sw_d2, combo),
                             std::vector<double>(sw_d1 / 2, 1.0));
        bound = canonical_detection_bound(sw_d1, sw_d1 / 2);
        floor_bound = canonical_npt_floor(sw_d1, sw_d1 / 2);
      } else if (sw_family == "extended") {
        w = extended_witness(sw_d);
        bound = extended_detection_bound(sw_a0, sw_d / 4);
        floor_bound = std::nullopt;
      } else {
        throw precondition_error("sweep: unknown family " + sw_family);
      }
      const DrawMode mode = sw_mode == "npt"        ? DrawMode::NptWindow
                            : sw_mode == "boundary" ? DrawMode::Boundary
                                                    : DrawMode::Valid;
      std::ostringstream csv;
      csv << "draw,family,mode,trace,class,bound,margin,ppt\n";
      csv.precision(17);
      double tightest = std::numeric_limits<double>::infinity();
      for (int k = 0; k < sw_draws; ++k) {
        auto rng = substream(seed, static_cast<std::uint64_t>(k));
        const FamilyDraw fd =
            draw_family(sw_family, w, sw_d, sw_n, mu, sw_d1, sw_d2, combo, sw_a0, mode, rng);
        const double t = fd.unnorm_trace_value;
        const PptResult ppt = is_ppt(fd.state);
        std::string cls;
        if (t >= -1e-12)
          cls = "undetected";
        else if (ppt.ppt)
          cls = "ppt_entangled_detected";
        else
          cls = "npt_window";
        const double row_bound = (mode == DrawMode::NptWindow && floor_bound) ? *floor_bound
                                 : bound                                      ? *bound
                                                                              : 0.0;
        const bool have_bound = (mode == DrawMode::NptWindow) ? floor_bound.has_value() : bound.has_value();
        double margin = 0.0;
        if (have_bound) {
          margin = t - row_bound;
          require(margin >= -1e-10, "sweep: draw undercuts the family bound");
          tightest = std::min(tightest, margin);
        } else {
          cls = "no-bound";
        }
        csv << k << "," << sw_family << "," << sw_mode << "," << t << "," << cls << ",";
        if (have_bound)
          csv << row_bound << "," << margin;
        else
          csv << ",";
        csv << "," << (ppt.ppt ? 1 : 0) << "\n";
      }
      csv << "# version=" << kVersion << " seed=" << seed << " tightest_margin=";
      if (std::isfinite(tightest))
        csv << tightest;
      else
        csv << "none";
      csv << "\n";
      emit(sw_out, csv.str());
      return 0;
    }

    if (dc->parsed()) {
      const SkewMatrix u = skew_from_json(json::parse(read_text_file(dc_in)));
      const CanonicalForm cf = canonical_decompose(u);
      const RealMat j = assemble_J(u.dim(), cf.lambdas);
      const double roundtrip = max_abs(RealMat(cf.q * j * cf.q.transpose() - u.m));
      json out = run_header(seed);
      out["canonical_form"] = canonical_form_to_json(cf);
      out["roundtrip_error"] = roundtrip;
      emit(dc_out, out.dump(2));
      return 0;
    }

    if (en->parsed()) {
      json out;
      out["version"] = kVersion;
      if (en_partitions > 0) {
        json list = json::array();
        for (const auto& p : partitions(en_partitions)) list.push_back(p.parts);
        out["n"] = en_partitions;
        out["count"] = list.size();
        out["partitions"] = list;
      } else if (en_combos.size() == 2) {
        json list = json::array();
        for (const auto& c : combinations(en_combos[0], en_combos[1])) list.push_back(c.indices);
        out["d2"] = en_combos[0];
        out["d1"] = en_combos[1];
        out["count"] = list.size();
        out["combinations"] = list;
      } else {
        throw precondition_error("enumerate: pass --partitions n or --combos d2 d1");
      }
      emit(en_out, out.dump(2));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 2;
}

}  // namespace witnesskit
