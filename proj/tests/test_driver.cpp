#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpmn/driver.hpp"

using namespace fpmn;
namespace fs = std::filesystem;

namespace {

std::string fixture(const char* name) { return std::string(FPMN_FIXTURE_DIR) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
};

Outcome run_text(Job job) {
  std::ostringstream s;
  int code = run(job, s);
  return {code, s.str()};
}

std::pair<int, Json> run_json(Job job) {
  job.json = true;
  std::ostringstream s;
  int code = run(job, s);
  return {code, Json::parse(s.str())};
}

fs::path scratch(const char* name) { return fs::temp_directory_path() / name; }

} // namespace

TEST_CASE("index reports", "[driver]") {
  auto [c1, j1] = run_json({.command = "index", .input = fixture("e1.txt")});
  CHECK(c1 == exit_ok);
  CHECK(j1["index"] == 1);
  auto [c2, j2] = run_json({.command = "index", .input = fixture("s3.txt")});
  CHECK(j2["index"] == 6);
  CHECK(j2["transversal"].size() == 6);
  auto [c3, j3] = run_json({.command = "index", .input = fixture("e3.txt")});
  CHECK(c3 == exit_ok);
  CHECK(j3["index"] == "infinite");
  CHECK(j3["free_rank"] == 1);

  Outcome u = run_text({.command = "index", .input = fixture("s3.txt"), .max_cosets = 2});
  CHECK(u.code == exit_undecided);
  CHECK(u.out.find("undecided") != std::string::npos);
  auto [c4, j4] = run_json({.command = "index", .input = fixture("s3.txt"), .max_cosets = 2});
  CHECK(j4["status"] == "undecided");
  CHECK(j4["exit_code"] == exit_undecided);
}

TEST_CASE("presentation of the index-2 example", "[driver]") {
  Outcome t = run_text({.command = "present", .input = fixture("e2.txt")});
  REQUIRE(t.code == exit_ok);
  CHECK(t.out.find("relators: 3 distinct of 4 formal") != std::string::npos);
  CHECK(t.out.find("r1 = [x^y, y^2] = y^-1*x^-1*y^-2*x*y^3") != std::string::npos);
  CHECK(t.out.find("F/[M,N] = < x, y | x^-1*y^-2*x*y^2, y^-1*x^-1*y^-2*x*y^3, y^-2*x^-1*y^-2*x*y^4 >") !=
        std::string::npos);

  auto [c, j] = run_json({.command = "present", .input = fixture("e2.txt")});
  CHECK(j["index"] == 2);
  CHECK(j["formal"] == 4);
  CHECK(j["distinct"] == 3);
  CHECK(j["relators"].size() == 3);
  CHECK(t.out.find(j["statement"].get<std::string>()) != std::string::npos);
  CHECK(t.out.find("rounds: " + j["rounds"].dump()) != std::string::npos);

  auto [c1, j1] = run_json({.command = "present", .input = fixture("e1.txt")});
  CHECK(j1["statement"] == "F/[M,N] = < a, b | a^-1*b^-1*a*b >");
}

TEST_CASE("exit codes", "[driver]") {
  CHECK(run_text({.command = "present", .input = fixture("e3.txt")}).code == exit_input);
  CHECK(run_text({.command = "frobnicate", .input = fixture("e1.txt")}).code == exit_input);
  CHECK(run_text({.command = "index", .input = fixture("missing.txt")}).code == exit_input);
  CHECK(run_text({.command = "index", .input = fixture("e1.txt"), .max_cosets = 0}).code == exit_input);
  CHECK(run_text({.command = "certify", .input = fixture("e2.txt"), .m = "5"}).code == exit_input);
  CHECK(run_text({.command = "certify", .input = fixture("e2.txt"), .m = "y"}).code == exit_input);
  CHECK(run_text({.command = "certify", .input = fixture("e2.txt"), .max_steps = 2, .f = "y^9 x y^7"}).code ==
        exit_limit);
  CHECK(run_text({.command = "class", .input = fixture("e3.txt")}).code == exit_input);
  CHECK(run_text({.command = "witness", .input = fixture("e2.txt"), .y = ""}).code == exit_input);
  CHECK(run_text({.command = "witness", .input = fixture("e3.txt"), .backend = "table", .y = ""}).code ==
        exit_limit);
  CHECK(run_text({.command = "witness", .input = fixture("e3.txt"), .backend = "free:x->s,y->t", .y = ""})
            .code == exit_input);
  CHECK(run_text({.command = "witness", .input = fixture("e3.txt"), .budget = 1, .y = "[x^y,x]"}).code ==
        exit_limit);

  auto [c, j] = run_json({.command = "present", .input = fixture("e3.txt")});
  CHECK(j["status"] == "error");
  CHECK(j["error"]["kind"] == "refused");
  CHECK(j["exit_code"] == exit_input);
}

TEST_CASE("certify and recheck through files", "[driver]") {
  fs::path file = scratch("fpmn_driver_certificate.json");
  Outcome t = run_text({.command = "certify", .input = fixture("e2.txt"), .out = file.string(),
                        .m = "x", .f = "y^3", .n = "y^2"});
  REQUIRE(t.code == exit_ok);
  CHECK(t.out.find("verified: yes") != std::string::npos);
  CHECK(run_text({.command = "recheck", .input = file.string()}).code == exit_ok);

  Json doc = Json::parse(std::ifstream(file));
  doc["steps"][0]["exp"] = -doc["steps"][0]["exp"].get<int>();
  std::ofstream(file) << doc.dump(2);
  auto [rc, rj] = run_json({.command = "recheck", .input = file.string()});
  CHECK(rc == exit_verification);
  CHECK(rj["valid"] == false);
  CHECK_FALSE(rj["problems"].empty());

  std::ofstream(file) << "{ not json";
  CHECK(run_text({.command = "recheck", .input = file.string()}).code == exit_input);
  fs::remove(file);

  auto [bc, bj] = run_json({.command = "certify", .input = fixture("s3.txt"), .random = 30});
  CHECK(bc == exit_ok);
  CHECK(bj["verified"] == 30);
}

TEST_CASE("class and witness reports agree across formats", "[driver]") {
  Outcome t = run_text({.command = "class", .input = fixture("e2.txt")});
  auto [c, j] = run_json({.command = "class", .input = fixture("e2.txt")});
  CHECK(t.code == exit_ok);
  CHECK(t.out.find("class: " + j["class"].dump()) != std::string::npos);
  CHECK(j["class"] == 1);

  auto [cc, cj] = run_json({.command = "class", .input = fixture("comm.txt"), .backend = "abelian"});
  CHECK(cc == exit_ok);
  CHECK(cj["class"].get<unsigned>() >= 1);

  fs::path file = scratch("fpmn_driver_witness.json");
  Job w{.command = "witness", .input = fixture("e3.txt"), .backend = "free:x->1,y->t", .out = file.string(),
        .y = "[x^y,x]"};
  Outcome wt = run_text(w);
  auto [wc, wj] = run_json(w);
  REQUIRE(wc == exit_ok);
  CHECK(wt.out.find("omega: " + wj["witness"]["omega"].get<std::string>()) != std::string::npos);
  CHECK(wt.out.find("shift g: t^2") != std::string::npos);
  CHECK(run_text({.command = "recheck", .input = file.string()}).code == exit_ok);
  fs::remove(file);

  auto [ac, aj] = run_json({.command = "witness", .input = fixture("free3.txt"), .y = ""});
  CHECK(ac == exit_ok);
  CHECK(aj["witness"]["checks"]["distant"] == true);
}
