#include "kplus/acceptance.hpp"

#include <CLI11.hpp>

#include <cstdio>

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  std::string profile = "full";
  app.add_option("--only", only, "criterion ids")->check(CLI::Range(1, 10));
  app.add_option("--profile", profile)->check(CLI::IsMember({"quick", "full"}));
  CLI11_PARSE(app, argc, argv);
  if (only.empty())
    for (int i = 1; i <= 10; ++i) only.push_back(i);

  auto p = profile == "full" ? kplus::Profile::Full : kplus::Profile::Quick;
  int failed = 0;
  for (int id : only) {
    kplus::CriterionResult r = kplus::run_criterion(id, p);
    std::printf("criterion %d: %s  %s (%.1f s)  [%s]\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.seconds,
                r.detail.c_str());
    for (const auto& f : r.findings) std::printf("  finding: %s\n", f.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  return failed == 0 ? 0 : 1;
}
