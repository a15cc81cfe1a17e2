// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "oak/assessment.hpp"
#include "oak/browser/access.hpp"
#include "oak/browser/service.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace oak;
using namespace oak::testing;

namespace {

struct Failed {
  std::string why;
};

void require(bool ok, const std::string& why) {
  if (!ok) throw Failed{why};
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void turtle_round_trip() {
  const auto t0 = Clock::now();
  const auto doc = rdf::parse_turtle(read_fixture("classifier_010.ttl"));
  require(doc.triples.size() == 20, "fixture has " + std::to_string(doc.triples.size()) + " triples");
  const auto text1 = rdf::to_turtle(doc);
  const auto again = rdf::parse_turtle(text1);
  require(std::set<Triple>(again.triples.begin(), again.triples.end()) ==
              std::set<Triple>(doc.triples.begin(), doc.triples.end()),
          "fixture triples changed by a round trip");
  require(rdf::to_turtle(again) == text1, "fixture serialization not idempotent");

  std::mt19937 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_store(rng, 500);
    const auto text = s.to_turtle();
    const auto back = rdf::load_turtle(text);
    require(back.size() == s.size() && back.to_turtle() == text, "random store " + std::to_string(i));
  }
  require(seconds_since(t0) < 5, "took " + std::to_string(seconds_since(t0)) + " s");
}

void transformation_table() {
  const auto o = agri::mini_ontology();
  const auto* t = o.find_transformation("Transformation_SoilPH_Tier5");
  require(t != nullptr, "Transformation_SoilPH_Tier5 missing");
  const std::array<std::pair<double, const char*>, 6> table = {{{4.5, "Strongly acidic"},
                                                               {5.0, "Strongly acidic"},
                                                               {6.0, "Acidic"},
                                                               {7.0, "Neutral"},
                                                               {8.0, "Alkaline"},
                                                               {12.0, "Strongly alkaline"}}};
  for (const auto& [x, want] : table) {
    const auto got = apply_transformation(*t, x);
    require(got == Scalar{Label{want}}, "pH " + std::to_string(x) + " -> " + to_string(got));
  }
}

void sparql_oracle() {
  const auto t0 = Clock::now();
  std::mt19937 rng(31337);
  for (int i = 0; i < 1000; ++i) {
    const auto c = random_case(rng);
    require(sparql::evaluate(c.store, c.query).rows == oracle(c.store, c.query),
            "case " + std::to_string(i) + ": " + sparql::to_string(c.query));
  }
  Repository repo(agri::mini_ontology());
  repo.add(classifier_010());
  const auto table = sparql::evaluate(*repo.snapshot(), sparql::parse_query(read_fixture("nitrogen_condition.rq")));
  require(table.rows.size() == 1 && table.rows[0][0] == publish::kmap_iri("Classifier_010"),
          "condition query returned " + std::to_string(table.rows.size()) + " rows");
  require(seconds_since(t0) < 60, "took " + std::to_string(seconds_since(t0)) + " s");
}

void wrapper_conformance() {
  const auto o = agri::mini_ontology();
  std::set<std::string> tasks;
  for (int n = 1; n <= kFixtureItems; ++n) {
    const auto d = fixture_descriptor(n);
    require(core_of(wrap(d, o, 1).kr) == prescribed_core(d, 1, o), "item " + std::to_string(n));
    tasks.insert(d.task);
  }
  require(tasks.size() == 4, "not every task covered");

  Repository repo(agri::mini_ontology());
  const auto res = repo.add(classifier_010());
  require(res.grade.total == 60 && res.grade.accepted, "reference item grades " + std::to_string(res.grade.total));

  auto missing = classifier_010();
  missing.algorithms.clear();
  bool rejected = false;
  try {
    wrap(missing, o, 1);
  } catch (const Error&) {
    rejected = true;
  }
  require(rejected, "descriptor without algorithms accepted");
}

void foca() {
  FocaInput in;
  for (auto& g : in.goals) g = {100.0, 100.0};
  in.lexp = 1;
  const auto r = foca_score(in);
  require(std::abs(r.mu - 1 / (1 + std::exp(-6.90))) < 1e-9, "all-100 mu " + std::to_string(r.mu));
  require(std::abs(r.mu - 0.998994) < 1e-6, "all-100 mu " + std::to_string(r.mu));

  in.sb = 0;
  const double base = foca_score(in).mu;
  for (double g : {0.0, 13.0, 57.5, 99.0}) {
    in.goals[0] = {g, g};
    require(foca_score(in).mu == base, "Sb=0 not invariant");
  }

  const auto table = foca_score(foca_from_json(nlohmann::json::parse(read_fixture("foca_table.json"))));
  require(std::abs(table.mu - 1 / (1 + std::exp(-5.65))) < 1e-9, "table mu " + std::to_string(table.mu));
}

void access_matrix() {
  const auto t0 = Clock::now();
  const auto repo = fixture_repository();
  const auto snap = repo->snapshot();
  browser::Access all;
  for (const auto& q : nlohmann::json::parse(read_fixture("queries.json"))) {
    const auto r = browser::search(q.at("q").get<std::string>(), *repo->ontology(), *snap);
    all |= browser::access_of(r, *snap);
  }
  const auto elements = all.elements();
  const auto roles = all.roles();
  require(elements.size() == browser::kAllElements.size(), std::to_string(elements.size()) + " element kinds");
  require(roles.size() == browser::kAllRoles.size(), std::to_string(roles.size()) + " roles");
  require(seconds_since(t0) < 5, "took " + std::to_string(seconds_since(t0)) + " s");
}

std::string run(const std::string& cmd, int& rc) {
  std::string out;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) throw Failed{"cannot run " + cmd};
  std::array<char, 4096> buf;
  while (fgets(buf.data(), buf.size(), p)) out += buf.data();
  rc = WEXITSTATUS(pclose(p));
  return out;
}

void end_to_end() {
  TempDir dir;
  const auto store = (dir / "store.ttl").string();
  int rc = 0;
  auto out = run(std::string(OAK_CLI) + " wrap " + fixture("classifier_010.json").string() + " --import --store " +
                     store,
                 rc);
  require(rc == 0, "wrap failed: " + out);

  Repository repo(agri::mini_ontology(), store);
  browser::Server server(repo);
  const int port = server.start();
  out = run(std::string(OAK_CLI) + " search \"predict based on Nitrogen\" --url http://127.0.0.1:" +
                std::to_string(port),
            rc);
  server.stop();
  require(rc == 0, "search failed: " + out);
  require(out.find("Classifier_010") != std::string::npos, "card missing from: " + out);
  require(out.find("Nitrogen") != std::string::npos, "card lacks the Nitrogen condition");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void()>>> criteria = {
      {"turtle round-trip", turtle_round_trip},
      {"transformation table", transformation_table},
      {"sparql oracle equivalence", sparql_oracle},
      {"wrapper pattern conformance", wrapper_conformance},
      {"foca formula", foca},
      {"access matrix", access_matrix},
      {"end-to-end wrap and search", end_to_end},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto t0 = Clock::now();
    std::string why;
    try {
      check();
    } catch (const Failed& f) {
      why = f.why;
    } catch (const std::exception& e) {
      why = e.what();
    }
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (why.empty() ? "PASS" : "FAIL") << "  " << name << "  (" << seconds_since(t0) << " s)";
    if (!why.empty()) line << "  " << why;
    std::cout << line.str() << std::endl;
    failed += !why.empty();
  }
  return failed == 0 ? 0 : 1;
}
