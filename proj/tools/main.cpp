// gridlang — command-line front end: validation, membership, enumeration,
// conversion between Wang tile systems and self-assembly automata, loop
// analysis, and bounded language comparison.
//
// Exit codes (stable contract):
//   0  accepted / equal / valid
//   1  rejected / unequal / invalid model
//   2  usage error or malformed input
//   3  bound exhausted before a definitive answer

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "gridlang/constructions.hpp"
#include "gridlang/grid_graph.hpp"
#include "gridlang/json_io.hpp"
#include "gridlang/picture.hpp"
#include "gridlang/saha.hpp"
#include "gridlang/wang.hpp"

namespace {

using nlohmann::json;
using namespace gridlang;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;
constexpr int kBoundExhausted = 3;

long long env_max_states() {
  const char* raw = std::getenv("GRIDLANG_MAX_STATES");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxStates;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || v <= 0) {
    std::cerr << "warning: ignoring invalid GRIDLANG_MAX_STATES value '" << raw
              << "'; using default " << kDefaultMaxStates << "\n";
    return kDefaultMaxStates;
  }
  return v;
}

void emit(const json& report, const std::string& outPath) {
  const std::string text = report.dump(2);
  if (outPath.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream os(outPath);
    if (!os) throw std::invalid_argument("cannot write output file '" + outPath + "'");
    os << text << "\n";
  }
}

void write_model_file(const json& model, const std::string& outPath) {
  std::ofstream os(outPath);
  if (!os) throw std::invalid_argument("cannot write output file '" + outPath + "'");
  os << model.dump(2) << "\n";
}

std::string parent_dir(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

void render_picture(const Picture& p) {
  for (const std::vector<std::string>& row : framed(p)) {
    for (std::size_t i = 0; i < row.size(); ++i)
      std::cerr << (i ? " " : "") << row[i];
    std::cerr << "\n";
  }
  std::cerr << "\n";
}

// Loads an automaton and insists it is semantically valid; returns diagnostics
// through `out` and false when it is not (caller exits 1).
bool load_valid_automaton(const std::string& path, Automaton& a, json& errorReport) {
  a = automaton_from_json(load_json_file(path), parent_dir(path));
  const std::vector<std::string> diags = validate(a);
  if (diags.empty()) return true;
  errorReport = json{{"file", path}, {"valid", false}, {"diagnostics", diags}};
  return false;
}

// ---------------------------------------------------------------- validate --
int run_validate(const std::string& path) {
  const json j = load_json_file(path);  // syntax errors -> exit 2
  json report{{"command", "validate"}, {"file", path}};
  const ModelKind kind = sniff_model(j);
  switch (kind) {
    case ModelKind::Automaton: {
      report["kind"] = "automaton";
      Automaton a;
      try {
        a = automaton_from_json(j, parent_dir(path));
      } catch (const std::invalid_argument& e) {
        report["valid"] = false;
        report["diagnostics"] = json::array({e.what()});
        emit(report, "");
        return kRejected;
      }
      const std::vector<std::string> diags = validate(a);
      report["valid"] = diags.empty();
      report["diagnostics"] = diags;
      emit(report, "");
      return diags.empty() ? kOk : kRejected;
    }
    case ModelKind::Wts:
    case ModelKind::Pts:
    case ModelKind::Picture: {
      report["kind"] = kind == ModelKind::Wts     ? "wts"
                       : kind == ModelKind::Pts   ? "pts"
                                                  : "picture";
      try {
        if (kind == ModelKind::Wts) wts_from_json(j);
        else if (kind == ModelKind::Pts) pts_from_json(j);
        else picture_from_json(j);
      } catch (const std::invalid_argument& e) {
        report["valid"] = false;
        report["diagnostics"] = json::array({e.what()});
        emit(report, "");
        return kRejected;
      }
      report["valid"] = true;
      report["diagnostics"] = json::array();
      emit(report, "");
      return kOk;
    }
    case ModelKind::Unknown:
      throw std::invalid_argument("cannot determine the model kind of '" + path + "'");
  }
  return kInputError;  // unreachable
}

// ------------------------------------------------------------------ accept --
int run_accept(const std::string& wtsPath, const std::string& ptsPath,
               const std::string& sahaPath, const std::string& picturePath,
               long long maxSteps, const std::string& render,
               const std::string& outPath) {
  const Picture p = picture_from_json(load_json_file(picturePath));
  if (render == "ascii") render_picture(p);

  json report{{"command", "accept"}, {"picture", picturePath}};

  if (!wtsPath.empty()) {
    const WangSystem w = wts_from_json(load_json_file(wtsPath));
    TiledPicture witness;
    const bool ok = wts_accepts(w, p, &witness);
    report["model"] = "wts";
    report["accepted"] = ok;
    if (ok) report["witness"] = tiling_to_json(witness, w);
    emit(report, outPath);
    return ok ? kOk : kRejected;
  }

  if (!ptsPath.empty()) {
    const PictureTileSystem t = pts_from_json(load_json_file(ptsPath));
    const bool ok = pts_accepts(t, p);
    report["model"] = "pts";
    report["accepted"] = ok;
    emit(report, outPath);
    return ok ? kOk : kRejected;
  }

  Automaton a;
  json invalid;
  if (!load_valid_automaton(sahaPath, a, invalid)) {
    emit(invalid, outPath);
    return kRejected;
  }
  SearchLimits limits;
  limits.maxSteps = maxSteps;
  limits.maxStates = env_max_states();
  const AcceptResult r = saha_accepts(a, p, limits);
  report["model"] = "saha";
  report["accepted"] = r.verdict == Verdict::Accepted;
  report["verdict"] = r.verdict == Verdict::Accepted   ? "accepted"
                      : r.verdict == Verdict::Rejected ? "rejected"
                                                       : "bound-exhausted";
  report["trace"] = r.trace;
  emit(report, outPath);
  return r.verdict == Verdict::Accepted   ? kOk
         : r.verdict == Verdict::Rejected ? kRejected
                                          : kBoundExhausted;
}

// --------------------------------------------------------------- enumerate --
int run_enumerate(const std::string& path, int maxH, int maxW,
                  const std::string& render, const std::string& outPath) {
  const json j = load_json_file(path);
  json report{{"command", "enumerate"}, {"file", path},
              {"max_h", maxH}, {"max_w", maxW}};

  std::vector<Picture> pictures;
  bool complete = true;
  switch (sniff_model(j)) {
    case ModelKind::Wts: {
      report["kind"] = "wts";
      pictures = wts_enumerate(wts_from_json(j), maxH, maxW);
      break;
    }
    case ModelKind::Pts: {
      report["kind"] = "pts";
      pictures = pts_enumerate(pts_from_json(j), maxH, maxW);
      break;
    }
    case ModelKind::Automaton: {
      report["kind"] = "saha";
      Automaton a;
      json invalid;
      if (!load_valid_automaton(path, a, invalid)) {
        emit(invalid, outPath);
        return kRejected;
      }
      SearchLimits limits;
      limits.maxStates = env_max_states();
      EnumResult r = saha_enumerate(a, maxH, maxW, limits);
      pictures = std::move(r.pictures);
      complete = r.complete;
      break;
    }
    default:
      throw std::invalid_argument("'" + path + "' is not an enumerable model");
  }

  report["complete"] = complete;
  report["count"] = pictures.size();
  json arr = json::array();
  for (const Picture& p : pictures) {
    arr.push_back(picture_to_json(p));
    if (render == "ascii") render_picture(p);
  }
  report["pictures"] = std::move(arr);
  emit(report, outPath);
  return complete ? kOk : kBoundExhausted;
}

// ----------------------------------------------------------------- convert --
int run_convert_wts_to_saha(const std::string& inPath, const std::string& outPath,
                            bool prune) {
  const WangSystem w = wts_from_json(load_json_file(inPath));
  const Automaton a = wts_to_saha(w, prune);
  json model = automaton_to_json(a);
  model["paper_construction"] = "wts_to_saha";
  write_model_file(model, outPath);
  emit(json{{"command", "convert"},
            {"direction", "wts-to-saha"},
            {"paper_construction", "wts_to_saha"},
            {"input", inPath},
            {"output", outPath},
            {"nodes", a.graph.size()},
            {"hyperedges", a.edges.size()}},
       "");
  return kOk;
}

int run_convert_saha_to_wts(const std::string& inPath, const std::string& outPath) {
  Automaton a;
  json invalid;
  if (!load_valid_automaton(inPath, a, invalid)) {
    emit(invalid, "");
    return kRejected;
  }
  const std::vector<LoopReport> strong = find_strong_loops(a);
  if (!strong.empty()) {
    json loops = json::array();
    for (const LoopReport& r : strong) loops.push_back(loop_report_to_json(r));
    emit(json{{"command", "convert"},
              {"direction", "saha-to-wts"},
              {"error", "the automaton has strong loops; the translation is undefined"},
              {"strong_loops", loops}},
         "");
    return kRejected;
  }
  const SahaToWts conv = saha_to_wts(a);
  json model = wts_to_json(conv.wts);
  model["paper_construction"] = "saha_to_wts";
  write_model_file(model, outPath);
  emit(json{{"command", "convert"},
            {"direction", "saha-to-wts"},
            {"paper_construction", "saha_to_wts"},
            {"input", inPath},
            {"output", outPath},
            {"tile_candidates", conv.candidates.size()},
            {"tiles", conv.wts.tiles.size()},
            {"colors", conv.wts.colors.size()}},
       "");
  return kOk;
}

// ------------------------------------------------------------------- loops --
int run_loops(const std::string& path) {
  Automaton a;
  json invalid;
  if (!load_valid_automaton(path, a, invalid)) {
    emit(invalid, "");
    return kRejected;
  }
  const std::vector<LoopReport> all = find_loops(a);
  json loops = json::array();
  bool anyStrong = false;
  for (const LoopReport& r : all) {
    loops.push_back(loop_report_to_json(r));
    anyStrong = anyStrong || r.strong;
  }
  emit(json{{"command", "loops"},
            {"file", path},
            {"loops", loops},
            {"strong", anyStrong}},
       "");
  return anyStrong ? kRejected : kOk;
}

// ----------------------------------------------------------------- compare --
// Enumerates one side of the comparison; returns false on bound exhaustion.
bool enumerate_side(const std::string& path, int maxH, int maxW,
                    std::vector<Picture>& out, json& errorReport) {
  const json j = load_json_file(path);
  switch (sniff_model(j)) {
    case ModelKind::Wts:
      out = wts_enumerate(wts_from_json(j), maxH, maxW);
      return true;
    case ModelKind::Pts:
      out = pts_enumerate(pts_from_json(j), maxH, maxW);
      return true;
    case ModelKind::Automaton: {
      Automaton a;
      if (!load_valid_automaton(path, a, errorReport)) {
        throw std::invalid_argument("invalid automaton '" + path + "': " +
                                    errorReport["diagnostics"][0].get<std::string>());
      }
      SearchLimits limits;
      limits.maxStates = env_max_states();
      EnumResult r = saha_enumerate(a, maxH, maxW, limits);
      out = std::move(r.pictures);
      return r.complete;
    }
    default:
      throw std::invalid_argument("'" + path + "' is not an enumerable model");
  }
}

int run_compare(const std::string& leftPath, const std::string& rightPath,
                int maxH, int maxW) {
  std::vector<Picture> left, right;
  json errorReport;
  const bool leftComplete = enumerate_side(leftPath, maxH, maxW, left, errorReport);
  const bool rightComplete = enumerate_side(rightPath, maxH, maxW, right, errorReport);

  auto difference = [](const std::vector<Picture>& a, const std::vector<Picture>& b) {
    std::vector<Picture> d;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
    return d;
  };
  const std::vector<Picture> leftOnly = difference(left, right);
  const std::vector<Picture> rightOnly = difference(right, left);

  auto sample = [](const std::vector<Picture>& v) {
    json arr = json::array();
    for (std::size_t i = 0; i < v.size() && i < 5; ++i) arr.push_back(picture_to_json(v[i]));
    return arr;
  };
  const bool complete = leftComplete && rightComplete;
  const bool equal = leftOnly.empty() && rightOnly.empty();
  emit(json{{"command", "compare"},
            {"left", leftPath},
            {"right", rightPath},
            {"max_h", maxH},
            {"max_w", maxW},
            {"complete", complete},
            {"equal", equal},
            {"left_count", left.size()},
            {"right_count", right.size()},
            {"left_only_count", leftOnly.size()},
            {"right_only_count", rightOnly.size()},
            {"left_only", sample(leftOnly)},
            {"right_only", sample(rightOnly)}},
       "");
  if (!complete) return kBoundExhausted;
  return equal ? kOk : kRejected;
}

// ------------------------------------------------------------- reconstruct --
int run_reconstruct(const std::string& sahaPath, const std::string& tilingPath,
                    const std::string& render, const std::string& outPath) {
  Automaton a;
  json invalid;
  if (!load_valid_automaton(sahaPath, a, invalid)) {
    emit(invalid, outPath);
    return kRejected;
  }
  const std::vector<LoopReport> strong = find_strong_loops(a);
  if (!strong.empty()) {
    emit(json{{"command", "reconstruct"},
              {"error", "the automaton has strong loops; no tile system exists"}},
         outPath);
    return kRejected;
  }
  const SahaToWts conv = saha_to_wts(a);

  json tj = load_json_file(tilingPath);
  if (tj.contains("witness")) tj = tj["witness"];  // accept-report files work too
  const TiledPicture t = tiling_from_json(tj, conv.wts);

  Reconstruction rec;
  try {
    rec = reconstruct_derivation(conv, t);
  } catch (const std::invalid_argument& e) {
    emit(json{{"command", "reconstruct"}, {"ok", false}, {"error", e.what()}}, outPath);
    return kRejected;
  } catch (const std::logic_error& e) {
    emit(json{{"command", "reconstruct"}, {"ok", false}, {"error", e.what()}}, outPath);
    return kRejected;
  }

  const std::optional<Picture> p = picture_of(a, rec.finalConfig);
  if (!p) {
    emit(json{{"command", "reconstruct"}, {"ok", false},
              {"error", "replay did not terminate in a picture"}},
         outPath);
    return kRejected;
  }
  if (render == "ascii") render_picture(*p);
  emit(json{{"command", "reconstruct"},
            {"ok", true},
            {"masks", rec.order.size()},
            {"trace", rec.trace},
            {"picture", picture_to_json(*p)}},
       outPath);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridlang — 2D picture languages: Wang tile systems and "
               "self-assembly hypergraph automata"};
  app.require_subcommand(1);

  // validate
  std::string validatePath;
  CLI::App* cmdValidate = app.add_subcommand(
      "validate", "Check a model file (automaton, tile system, or picture)");
  cmdValidate->add_option("file", validatePath, "model JSON file")
      ->required()->check(CLI::ExistingFile);

  // accept
  std::string acceptWts, acceptPts, acceptSaha, acceptPicture, acceptRender, acceptOut;
  long long acceptMaxSteps = -1;
  CLI::App* cmdAccept = app.add_subcommand(
      "accept", "Decide membership of a picture in a model's language");
  CLI::Option* optWts = cmdAccept->add_option("--wts", acceptWts, "Wang tile system JSON")
      ->check(CLI::ExistingFile);
  CLI::Option* optPts = cmdAccept->add_option("--pts", acceptPts, "picture tile system JSON")
      ->check(CLI::ExistingFile);
  CLI::Option* optSaha = cmdAccept->add_option("--saha", acceptSaha, "automaton JSON")
      ->check(CLI::ExistingFile);
  optWts->excludes(optPts)->excludes(optSaha);
  optPts->excludes(optSaha);
  cmdAccept->add_option("--picture", acceptPicture, "picture JSON")
      ->required()->check(CLI::ExistingFile);
  cmdAccept->add_option("--max-steps", acceptMaxSteps,
                        "depth limit on derivations (-1 = unbounded)");
  cmdAccept->add_option("--render", acceptRender, "ascii: print the framed picture");
  cmdAccept->add_option("--out", acceptOut, "write the JSON report to a file");

  // enumerate
  std::string enumPath, enumRender, enumOut;
  int enumMaxH = 0, enumMaxW = 0;
  CLI::App* cmdEnumerate = app.add_subcommand(
      "enumerate", "List every picture of the model's language within bounds");
  cmdEnumerate->add_option("model", enumPath, "model JSON file")
      ->required()->check(CLI::ExistingFile);
  cmdEnumerate->add_option("--max-h", enumMaxH, "height bound")->required();
  cmdEnumerate->add_option("--max-w", enumMaxW, "width bound")->required();
  cmdEnumerate->add_option("--render", enumRender, "ascii: print each picture");
  cmdEnumerate->add_option("--out", enumOut, "write the JSON report to a file");

  // convert
  std::string convertIn, convertOut;
  bool convertPrune = false;
  CLI::App* cmdConvert = app.add_subcommand(
      "convert", "Translate between Wang tile systems and automata");
  CLI::App* cmdW2S = cmdConvert->add_subcommand(
      "wts-to-saha", "Wang tile system -> self-assembly automaton");
  cmdW2S->add_option("input", convertIn, "Wang tile system JSON")
      ->required()->check(CLI::ExistingFile);
  cmdW2S->add_option("-o,--out", convertOut, "output automaton JSON")->required();
  cmdW2S->add_flag("--prune", convertPrune,
                   "drop tiles that cannot appear in any tiling first");
  CLI::App* cmdS2W = cmdConvert->add_subcommand(
      "saha-to-wts", "self-assembly automaton -> Wang tile system");
  cmdS2W->add_option("input", convertIn, "automaton JSON")
      ->required()->check(CLI::ExistingFile);
  cmdS2W->add_option("-o,--out", convertOut, "output Wang tile system JSON")->required();
  cmdConvert->require_subcommand(1);

  // loops
  std::string loopsPath;
  CLI::App* cmdLoops = app.add_subcommand(
      "loops", "Report every simple displacement loop of an automaton");
  cmdLoops->add_option("file", loopsPath, "automaton JSON")
      ->required()->check(CLI::ExistingFile);

  // compare
  std::string compareLeft, compareRight;
  int compareMaxH = 0, compareMaxW = 0;
  CLI::App* cmdCompare = app.add_subcommand(
      "compare", "Check two models for language equality within bounds");
  cmdCompare->add_option("--left", compareLeft, "model JSON file")
      ->required()->check(CLI::ExistingFile);
  cmdCompare->add_option("--right", compareRight, "model JSON file")
      ->required()->check(CLI::ExistingFile);
  cmdCompare->add_option("--max-h", compareMaxH, "height bound")->required();
  cmdCompare->add_option("--max-w", compareMaxW, "width bound")->required();

  // reconstruct
  std::string reconSaha, reconTiling, reconRender, reconOut;
  CLI::App* cmdReconstruct = app.add_subcommand(
      "reconstruct", "Rebuild an accepting derivation from a tiled picture");
  cmdReconstruct->add_option("--saha", reconSaha, "automaton JSON")
      ->required()->check(CLI::ExistingFile);
  cmdReconstruct->add_option("--tiling", reconTiling, "tiled picture JSON")
      ->required()->check(CLI::ExistingFile);
  cmdReconstruct->add_option("--render", reconRender, "ascii: print the picture");
  cmdReconstruct->add_option("--out", reconOut, "write the JSON report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (cmdValidate->parsed()) return run_validate(validatePath);
    if (cmdAccept->parsed()) {
      if (acceptWts.empty() && acceptPts.empty() && acceptSaha.empty()) {
        std::cerr << "accept: exactly one of --wts, --pts, --saha is required\n";
        return kInputError;
      }
      return run_accept(acceptWts, acceptPts, acceptSaha, acceptPicture,
                        acceptMaxSteps, acceptRender, acceptOut);
    }
    if (cmdEnumerate->parsed())
      return run_enumerate(enumPath, enumMaxH, enumMaxW, enumRender, enumOut);
    if (cmdConvert->parsed()) {
      if (cmdW2S->parsed()) return run_convert_wts_to_saha(convertIn, convertOut, convertPrune);
      return run_convert_saha_to_wts(convertIn, convertOut);
    }
    if (cmdLoops->parsed()) return run_loops(loopsPath);
    if (cmdCompare->parsed())
      return run_compare(compareLeft, compareRight, compareMaxH, compareMaxW);
    if (cmdReconstruct->parsed())
      return run_reconstruct(reconSaha, reconTiling, reconRender, reconOut);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
