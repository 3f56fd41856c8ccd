#include "crampcert/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "crampcert/crampedness.hpp"
#include "crampcert/ghcsupport.hpp"
#include "crampcert/jsonio.hpp"
#include "crampcert/momentgeo.hpp"

namespace crampcert {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInconclusive = 2;
constexpr int kNotApplicable = 3;

struct Options {
  std::string command;
  std::string pair;
  std::string spec;  // system descriptor or support-spec file, per command
  std::string lambda;
  std::string format = "json";
  long mMax = 12;
  double gamma = 0.0;
  double tol = 1e-3;
  std::uint64_t seed = 0;
  int restarts = 100;
  int maxIters = 500;
  int threads = 1;
  int samples = 25;
  long box = 4;
};

RatVec parseLambda(const std::string& text, int rank) {
  RatVec out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("empty coordinate in --lambda");
    out.push_back(Rat(tok));
  }
  if (static_cast<int>(out.size()) != rank)
    throw std::invalid_argument("--lambda needs " + std::to_string(rank) + " coordinates");
  return out;
}

// --pair accepts a catalog descriptor or a path to an embedding document.
EmbeddingSpec resolvePair(const std::string& pair) {
  std::ifstream in(pair);
  if (in.good()) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const std::exception& e) {
      throw std::invalid_argument("cannot parse embedding file '" + pair + "': " + e.what());
    }
    return loadEmbedding(doc);
  }
  return parsePair(pair);
}

OptimizerConfig optimizerConfig(const Options& opt) {
  OptimizerConfig cfg;
  cfg.restarts = opt.restarts;
  cfg.maxIters = opt.maxIters;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  return cfg;
}

nlohmann::json envelope(const Options& opt) {
  nlohmann::json doc;
  doc["version"] = kToolVersion;
  if (!opt.pair.empty()) doc["pair"] = opt.pair;
  doc["seed"] = opt.seed;
  return doc;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

RunOutcome emitJson(int code, const nlohmann::json& doc) {
  return {code, doc.dump(2) + "\n"};
}

RunOutcome cmdRoots(const Options& opt) {
  if (opt.spec.empty()) throw std::invalid_argument("roots requires --spec <system>");
  auto rs = RootSystem::parse(opt.spec);
  nlohmann::json doc = envelope(opt);
  doc["system"] = rs->descriptor();
  doc["rank"] = rs->rank();
  doc["dimension"] = rs->dimension();
  nlohmann::json cartan = nlohmann::json::array();
  for (const auto& row : rs->cartan()) cartan.push_back(row);
  doc["cartan"] = cartan;
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& alpha : rs->positiveRoots())
    roots.push_back(
        {{"simple", alpha.simple}, {"fund", alpha.fund}, {"height", alpha.height}});
  doc["positiveRoots"] = roots;
  return emitJson(kOk, doc);
}

RunOutcome cmdBranch(const Options& opt) {
  auto spec = resolvePair(opt.pair);
  RatVec lam = parseLambda(opt.lambda, spec.g->rank());
  nlohmann::json doc = envelope(opt);
  doc["lambda"] = ratVecToJson(lam);
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : branch(spec, lam))
    terms.push_back({{"weight", ratVecToJson(t.weight)}, {"multiplicity", t.multiplicity}});
  doc["terms"] = terms;
  return emitJson(kOk, doc);
}

RunOutcome cmdB(const Options& opt) {
  auto spec = resolvePair(opt.pair);
  RatVec lam = parseLambda(opt.lambda, spec.g->rank());
  nlohmann::json doc = envelope(opt);
  doc["lambda"] = ratVecToJson(lam);
  doc["b"] = bOfLambda(spec, lam).convert_to<long long>();
  return emitJson(kOk, doc);
}

RunOutcome cmdCertify(const Options& opt) {
  auto spec = resolvePair(opt.pair);
  auto result = certify(spec, Int(opt.mMax));
  nlohmann::json doc = envelope(opt);
  doc.update(certificateToJson(result));
  doc["pair"] = opt.pair;
  bool certified = std::holds_alternative<CrampednessCertificate>(result);
  return emitJson(certified ? kOk : kInconclusive, doc);
}

RunOutcome cmdMomentScan(const Options& opt) {
  auto spec = resolvePair(opt.pair);
  auto model = buildCompactModel(spec);
  auto scan = scanFundamentalOrbits(model, optimizerConfig(opt), opt.tol);
  if (opt.format == "csv" || opt.format == "text") {
    std::ostringstream os;
    if (opt.format == "csv") os << "pair,lambda,distance,meets,iterations,seed\n";
    for (const auto& row : scan.rows) {
      std::string lam;
      for (int i = 1; i <= spec.g->rank(); ++i)
        lam += (i == row.index ? "1" : "0") + std::string(i < spec.g->rank() ? " " : "");
      if (opt.format == "csv")
        os << opt.pair << "," << lam << "," << num(row.distance) << ","
           << (row.meets ? "true" : "false") << "," << row.iterations << "," << opt.seed << "\n";
      else
        os << "omega_" << row.index << "  distance=" << num(row.distance)
           << "  meets=" << (row.meets ? "yes" : "no") << "  iterations=" << row.iterations
           << "\n";
    }
    os << "surjective-evidence: " << (scan.numericallyCramped ? "yes" : "no") << "\n";
    return {kOk, os.str()};
  }
  nlohmann::json doc = envelope(opt);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : scan.rows)
    rows.push_back({{"index", row.index},
                    {"distance", row.distance},
                    {"meets", row.meets},
                    {"iterations", row.iterations}});
  doc["rows"] = rows;
  doc["surjectiveEvidence"] = scan.numericallyCramped;
  doc["tol"] = opt.tol;
  return emitJson(kOk, doc);
}

RunOutcome cmdOrbitDistance(const Options& opt) {
  auto spec = resolvePair(opt.pair);
  auto model = buildCompactModel(spec);
  RatVec lam = parseLambda(opt.lambda, spec.g->rank());
  auto res = momentImageDistance(model, lam, optimizerConfig(opt));
  nlohmann::json doc = envelope(opt);
  doc["lambda"] = ratVecToJson(lam);
  doc["distance"] = res.distance;
  doc["iterations"] = res.iterations;
  doc["bestRestart"] = res.bestRestart;
  return emitJson(kOk, doc);
}

RunOutcome cmdGhcCheck(const Options& opt) {
  auto spec = resolvePair(opt.pair);
  if (opt.spec.empty()) throw std::invalid_argument("ghc-check requires --spec <support-file>");
  std::ifstream in(opt.spec);
  if (!in.good()) throw std::invalid_argument("cannot open support file '" + opt.spec + "'");
  nlohmann::json sdoc;
  try {
    in >> sdoc;
  } catch (const std::exception& e) {
    throw std::invalid_argument("cannot parse support file: " + std::string(e.what()));
  }
  SupportSpec support = loadSupportSpec(sdoc);
  auto model = buildCompactModel(spec);
  auto certResult = certify(spec, Int(opt.mMax));
  const auto* cert = std::get_if<CrampednessCertificate>(&certResult);
  auto verdict = ghcVerdict(spec, model, support, Int(opt.mMax), optimizerConfig(opt), opt.tol,
                            cert);
  nlohmann::json doc = envelope(opt);
  doc.update(verdictToJson(verdict));
  return emitJson(kOk, doc);
}

RunOutcome cmdWzCheck(const Options& opt) {
  auto spec = resolvePair(opt.pair);
  auto model = buildCompactModel(spec);
  auto report = wzOrbitProperty(model, opt.samples, optimizerConfig(opt), opt.tol);
  nlohmann::json doc = envelope(opt);
  doc["hypothesisHolds"] = report.hypothesisHolds;
  doc["minOrbitDimension"] = minOrbitDimension(*spec.g);
  doc["dimH"] = spec.h->dimension();
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : report.samples) samples.push_back(ratVecToJson(s));
  doc["samples"] = samples;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures) failures.push_back(ratVecToJson(f));
  doc["failures"] = failures;
  int code = kOk;
  if (!report.hypothesisHolds)
    code = kNotApplicable;
  else if (!report.failures.empty())
    code = kInconclusive;
  return emitJson(code, doc);
}

}  // namespace

RunOutcome runCommand(const std::vector<std::string>& args) {
  Options opt;
  CLI::App app{"branching certificates and coadjoint-orbit scans"};
  app.require_subcommand(1);
  std::map<std::string, CLI::App*> subs;
  for (const char* name : {"roots", "branch", "b", "certify", "moment-scan", "orbit-distance",
                           "ghc-check", "wz-check"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--pair", opt.pair);
    sub->add_option("--spec", opt.spec);
    sub->add_option("--lambda", opt.lambda);
    sub->add_option("--mmax", opt.mMax)->check(CLI::PositiveNumber);
    sub->add_option("--gamma", opt.gamma)->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", opt.tol)->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed);
    sub->add_option("--restarts", opt.restarts)->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", opt.maxIters)->check(CLI::PositiveNumber);
    sub->add_option("--threads", opt.threads)->check(CLI::PositiveNumber);
    sub->add_option("--samples", opt.samples)->check(CLI::PositiveNumber);
    sub->add_option("--box", opt.box)->check(CLI::PositiveNumber);
    sub->add_option("--format", opt.format)->check(CLI::IsMember({"json", "csv", "text"}));
    subs[name] = sub;
  }

  std::vector<const char*> argv{"crampcert"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help()};
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    os << "error: " << e.what() << "\n";
    return {kInputError, os.str()};
  }
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) opt.command = name;

  try {
    if (opt.command != "roots" && opt.pair.empty())
      throw std::invalid_argument(opt.command + " requires --pair");
    if ((opt.command == "branch" || opt.command == "b" || opt.command == "orbit-distance") &&
        opt.lambda.empty())
      throw std::invalid_argument(opt.command + " requires --lambda");
    if (opt.command == "roots") return cmdRoots(opt);
    if (opt.command == "branch") return cmdBranch(opt);
    if (opt.command == "b") return cmdB(opt);
    if (opt.command == "certify") return cmdCertify(opt);
    if (opt.command == "moment-scan") return cmdMomentScan(opt);
    if (opt.command == "orbit-distance") return cmdOrbitDistance(opt);
    if (opt.command == "ghc-check") return cmdGhcCheck(opt);
    return cmdWzCheck(opt);
  } catch (const std::exception& e) {
    nlohmann::json doc;
    doc["version"] = kToolVersion;
    doc["error"] = e.what();
    return {kInputError, doc.dump(2) + "\n"};
  }
}

}  // namespace crampcert
