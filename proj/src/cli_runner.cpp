#include "flagtriad/cli.hpp"

#include "flagtriad/serialize.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace flagtriad::cli {

namespace {

using io::json;

struct Output {
  std::string format = "json";
  std::ostream* out = nullptr;

  void emit(const json& j) const {
    if (format == "table")
      *out << io::render_table(j);
    else
      *out << j.dump(2) << "\n";
  }
};

struct TriadSource {
  std::string pair_name;
  int n = 0;  // 0 = infer / default
  std::string triad_file;

  bool from_file() const { return !triad_file.empty(); }
};

void add_format(CLI::App* cmd, Output& output) {
  cmd->add_option("--format", output.format, "output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
}

void add_triad_source(CLI::App* cmd, TriadSource& src, bool need_pair_only = false) {
  auto* pair = cmd->add_option("--pair", src.pair_name, "builtin catalogue pair");
  cmd->add_option("--n", src.n, "size parameter of the pair");
  if (!need_pair_only) {
    auto* file = cmd->add_option("--triad-file", src.triad_file, "triad exchange file");
    file->excludes(pair);
  } else {
    pair->required();
  }
}

/// Default / inferred size parameter: the length of a user coordinate
/// vector determines n for the diagonal-model pairs.
int resolve_n(const TriadSource& src, std::size_t coord_hint) {
  if (src.n > 0) return src.n;
  if (src.pair_name == "su-n-so-rank1") return 3;
  if (coord_hint > 0) {
    if (src.pair_name == "su2n-so-sp" || src.pair_name == "su-n-so")
      return static_cast<int>(coord_hint);
  }
  throw std::invalid_argument("--n is required for pair '" + src.pair_name + "'");
}

flags::CataloguePair load_pair(const TriadSource& src, std::size_t coord_hint = 0) {
  return flags::catalogue_pair(src.pair_name, resolve_n(src, coord_hint));
}

triads::SymmetricTriad load_triad(const TriadSource& src, std::size_t coord_hint = 0) {
  if (src.from_file()) return io::read_triad_file(src.triad_file);
  const auto pair = load_pair(src, coord_hint);
  if (pair.congruent)
    throw std::invalid_argument("pair '" + src.pair_name +
                                "' is congruent; it has a restricted root system, not a triad");
  return pair.triad;
}

triads::PiPoint parse_h(const TriadSource& src, const std::string& h_csv) {
  const auto user = vec_from_string(h_csv);
  if (src.from_file()) return {user};
  return load_pair(src, user.size()).expand_h(std::vector<Rat>(user.begin(), user.end()));
}

int run_parsed(CLI::App& app, const std::vector<std::string>& args, std::ostream& err) {
  // CLI11 wants (argc, argv)
  std::vector<const char*> argv = {"flagtriad"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    err << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  return -1;  // parsed; caller runs the callbacks' results
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact symmetric-triad engine for real flag manifold intersections"};
  app.require_subcommand(1);
  Output output{"json", &out};

  // -- roots --
  auto* roots = app.add_subcommand("roots", "build a crystallographic root system");
  std::string family = "A";
  int rank = 1;
  roots->add_option("--family", family, "family letter A..G")->required();
  roots->add_option("--rank", rank, "rank")->required();
  add_format(roots, output);

  // -- triad --
  auto* triad_cmd = app.add_subcommand("triad", "catalogue triad and its axiom report");
  TriadSource triad_src;
  bool emit = false;
  add_triad_source(triad_cmd, triad_src);
  triad_cmd->add_flag("--emit", emit, "print only the exchange-format document");
  add_format(triad_cmd, output);

  // -- regular --
  auto* regular_cmd = app.add_subcommand("regular", "regularity of H (coordinates in units of pi)");
  TriadSource regular_src;
  std::string regular_h;
  add_triad_source(regular_cmd, regular_src);
  regular_cmd->add_option("--H", regular_h, "point, rational coordinates in units of pi")
      ->required();
  add_format(regular_cmd, output);

  // -- cell --
  auto* cell_cmd = app.add_subcommand("cell", "fundamental cell data");
  TriadSource cell_src;
  add_triad_source(cell_cmd, cell_src);
  add_format(cell_cmd, output);

  // -- gamma --
  auto* gamma_cmd = app.add_subcommand("gamma", "membership of H in the lattice Gamma");
  TriadSource gamma_src;
  std::string gamma_h;
  add_triad_source(gamma_cmd, gamma_src);
  gamma_cmd->add_option("--H", gamma_h, "point, rational coordinates in units of pi")->required();
  add_format(gamma_cmd, output);

  // -- st-point --
  auto* st_cmd = app.add_subcommand("st-point", "regular H0 with n H0 in Gamma");
  TriadSource st_src;
  long st_n = 0;
  add_triad_source(st_cmd, st_src);
  st_cmd->add_option("--lattice-n", st_n, "the n of the construction (> sum m_i)")->required();
  add_format(st_cmd, output);

  // -- intersect --
  auto* intersect_cmd = app.add_subcommand("intersect", "L0 cap Ad(exp H) L1");
  TriadSource intersect_src;
  std::string intersect_x0, intersect_h;
  add_triad_source(intersect_cmd, intersect_src);
  intersect_cmd->add_option("--x0", intersect_x0, "base point values")->required();
  intersect_cmd->add_option("--H", intersect_h, "point, rational coordinates in units of pi")
      ->required();
  add_format(intersect_cmd, output);

  // -- antipodal --
  auto* anti_cmd = app.add_subcommand("antipodal", "maximal antipodal set W(Delta) x0");
  std::string anti_family = "A", anti_x0;
  int anti_rank = 1;
  anti_cmd->add_option("--family", anti_family)->required();
  anti_cmd->add_option("--rank", anti_rank)->required();
  anti_cmd->add_option("--x0", anti_x0, "base point in ambient coordinates")->required();
  add_format(anti_cmd, output);

  // -- tight --
  auto* tight_cmd = app.add_subcommand("tight", "discrete intersection count vs SB(L;Z_2)");
  TriadSource tight_src;
  std::string tight_x0;
  add_triad_source(tight_cmd, tight_src, /*need_pair_only=*/true);
  tight_cmd->add_option("--x0", tight_x0, "base point values")->required();
  add_format(tight_cmd, output);

  // -- oracle --
  auto* oracle_cmd = app.add_subcommand("oracle", "floating-point certification of a pair");
  TriadSource oracle_src;
  std::uint64_t seed = 20240814;
  int grid = 50;
  long oracle_st_n = 0;
  add_triad_source(oracle_cmd, oracle_src, /*need_pair_only=*/true);
  oracle_cmd->add_option("--seed", seed, "seed for the rational H grid")->capture_default_str();
  oracle_cmd->add_option("--grid", grid, "number of grid points")->capture_default_str();
  oracle_cmd->add_option("--st-n", oracle_st_n, "n for the regularity-lemma check");
  add_format(oracle_cmd, output);

  const int parse_status = run_parsed(app, args, err);
  if (parse_status >= 0) return parse_status;

  try {
    if (roots->parsed()) {
      if (family.size() != 1) throw std::invalid_argument("--family must be a single letter");
      output.emit(io::root_system_json(rootsys::build_root_system(family[0], rank)));
      return 0;
    }
    if (triad_cmd->parsed()) {
      const auto t = load_triad(triad_src);
      if (emit) {
        *output.out << io::write_triad(t) << "\n";
        return 0;
      }
      json j;
      if (!triad_src.from_file()) {
        j["pair"] = triad_src.pair_name;
        j["n"] = resolve_n(triad_src, 0);
        j["type"] = load_pair(triad_src).triad_type;
      }
      j["triad"] = io::triad_to_json(t);
      j["axioms"] = io::axiom_report_json(triads::check_axioms(t));
      output.emit(j);
      return 0;
    }
    if (regular_cmd->parsed()) {
      const auto h = parse_h(regular_src, regular_h);
      const auto t = load_triad(regular_src, h.dim());
      output.emit(io::regularity_json(triads::is_regular(t, h)));
      return 0;
    }
    if (cell_cmd->parsed()) {
      output.emit(io::cell_json(triads::fundamental_cell(load_triad(cell_src))));
      return 0;
    }
    if (gamma_cmd->parsed()) {
      const auto h = parse_h(gamma_src, gamma_h);
      const auto t = load_triad(gamma_src, h.dim());
      json j;
      j["in_gamma"] = triads::gamma_contains(t, h);
      j["in_gamma_via_sigma_only"] = triads::gamma_contains_sigma_only(t, h);
      output.emit(j);
      return 0;
    }
    if (st_cmd->parsed()) {
      const auto t = load_triad(st_src);
      const auto h0 = triads::st_point(t, st_n);
      json j;
      j["n"] = st_n;
      j["H0_over_pi"] = io::vec_json(h0.q);
      j["regular"] = true;
      j["n_H0_in_gamma"] = true;
      output.emit(j);
      return 0;
    }
    if (intersect_cmd->parsed()) {
      const auto x0_raw = vec_from_string(intersect_x0);
      if (intersect_src.from_file()) {
        const auto t = io::read_triad_file(intersect_src.triad_file);
        const auto h = triads::PiPoint{vec_from_string(intersect_h)};
        output.emit(io::intersection_json(flags::noncongruent_intersection(t, x0_raw, h)));
        return 0;
      }
      const auto pair = load_pair(intersect_src, x0_raw.size());
      const auto x0 = flags::BasePoint::from_values({x0_raw.begin(), x0_raw.end()});
      const auto h_raw = vec_from_string(intersect_h);
      const auto h = pair.expand_h({h_raw.begin(), h_raw.end()});
      auto res = flags::intersect_pair(pair, x0, h);
      for (auto& p : res.points) {  // report points in user coordinates
        const auto user = pair.model_to_user(p);
        p.assign(user.begin(), user.end());
      }
      output.emit(io::intersection_json(res));
      return 0;
    }
    if (anti_cmd->parsed()) {
      if (anti_family.size() != 1) throw std::invalid_argument("--family must be a single letter");
      const auto rs = rootsys::build_root_system(anti_family[0], anti_rank);
      const auto orbit = flags::maximal_antipodal(rs, vec_from_string(anti_x0));
      json j;
      j["cardinality"] = orbit.size();
      json pts = json::array();
      for (const auto& p : orbit) pts.push_back(io::vec_json(p));
      j["points"] = pts;
      output.emit(j);
      return 0;
    }
    if (tight_cmd->parsed()) {
      const auto x0_raw = vec_from_string(tight_x0);
      const auto pair = load_pair(tight_src, x0_raw.size());
      const auto x0 = flags::BasePoint::from_values({x0_raw.begin(), x0_raw.end()});
      output.emit(io::tightness_json(flags::tightness_count(pair, x0)));
      return 0;
    }
    if (oracle_cmd->parsed()) {
      const auto pair = load_pair(oracle_src);
      const auto pd = oracle::build_pair(pair.name, pair.n);
      json reports = json::array();
      bool ok = true;

      auto push = [&](const oracle::CheckReport& rep) {
        reports.push_back(io::check_report_json(rep));
        ok = ok && rep.all_pass();
      };

      auto ext = oracle::extract_triad(pd);
      {
        // catalogue agreement folded into the extraction report
        const auto& expect = pair.congruent ? ext.triad : pair.triad;  // congruent: no triad claim
        const bool same = pair.congruent || (ext.triad.sigma == expect.sigma &&
                                             ext.triad.w == expect.w &&
                                             ext.triad.sigma_tilde == expect.sigma_tilde);
        ext.report.add("extracted triad equals catalogue triad", same ? 0.0 : 1.0, 0.5);
        push(ext.report);
      }

      {
        oracle::CheckReport grid_rep;
        grid_rep.title = "dimension certificate " + pair.name + " n=" + std::to_string(pair.n);
        grid_rep.seed = seed;
        double worst = 0;
        const auto grid_points = oracle::seeded_rational_grid(pd, ext.triad, grid, seed);
        for (const auto& h : grid_points) {
          const int numeric = oracle::intersection_dimension(pd, h);
          const int symbolic =
              oracle::symbolic_intersection_dimension(ext.triad, pd.flat_dim(), h);
          worst = std::max(worst, std::abs(static_cast<double>(numeric - symbolic)));
        }
        grid_rep.add("dim(p0 cap Ad(a)p1) matches the symbolic formula", worst, 0.5);
        push(grid_rep);
      }

      if (!pair.congruent && !pair.degenerate) {
        const auto cell = triads::fundamental_cell(pair.triad);
        const long n_st = oracle_st_n > 0 ? oracle_st_n : cell.m_sum() + 1;
        const auto h0 = triads::st_point(pair.triad, n_st);
        push(oracle::verify_lemma_regularity(pd, h0, n_st));
        push(oracle::verify_rotation_formulas(pd, h0));

        // commutativity of the discrete intersection at the regular H0,
        // for a default base point with distinct diagonal values
        std::vector<Rat> x0_user(pair.name == "su-n-so-rank1" ? 1 : pair.n, Rat(-1));
        x0_user[0] = Rat(static_cast<long>(x0_user.size()) - 1);
        if (x0_user.size() == 1) x0_user[0] = 1;
        const auto x0 = flags::BasePoint::from_values(x0_user);
        const auto res = flags::intersect_pair(pair, x0, h0);
        push(oracle::verify_commutative_lemma(pd, res.points, pair.expand_x0(x0), h0));
      }
      json j;
      j["pair"] = pair.name;
      j["n"] = pair.n;
      j["all_pass"] = ok;
      j["reports"] = reports;
      output.emit(j);
      return ok ? 0 : 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace flagtriad::cli
