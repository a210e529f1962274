// Exercises the shared library through the C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <string>

#include "fflab/fflab.h"

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { fflab_string_free(p); }
  std::string s() const { return p ? p : ""; }
};

std::string tmp_cache() {
  auto d = std::filesystem::temp_directory_path() / "fflab_capi_test_cache";
  std::filesystem::remove_all(d);
  return d.string();
}

}  // namespace

TEST_CASE("field handles") {
  fflab_field* f = nullptr;
  REQUIRE(fflab_field_new(9, &f) == FFLAB_OK);
  CHECK(fflab_field_order(f) == 9);
  fflab_field_free(f);
  CHECK(fflab_field_new(4, &f) == FFLAB_E_NON_ODD_PRIME);
  CHECK(f == nullptr);
  CHECK(std::string(fflab_last_error()).find("4") != std::string::npos);
  CHECK(fflab_field_new(3, nullptr) == FFLAB_E_INVALID_ARGUMENT);
  CHECK(std::string(fflab_status_name(FFLAB_E_NOT_SQUARE_FREE)) == "NotSquareFree");
  CHECK(std::string(fflab_status_name(FFLAB_E_VERIFICATION)) == "VerificationFailed");
  fflab_field_free(nullptr);
  fflab_string_free(nullptr);
}

TEST_CASE("lfun report") {
  fflab_field* f = nullptr;
  REQUIRE(fflab_field_new(3, &f) == FFLAB_OK);
  {
    Str js;
    REQUIRE(fflab_lfun(f, "1,0,1", "auto", &js.p) == FFLAB_OK);
    CHECK(js.s().find("\"num\": \"-1\"") != std::string::npos);
    CHECK(js.s().find("\"den\": \"2\"") != std::string::npos);
  }
  {
    Str js;
    CHECK(fflab_lfun(f, "1,0,0,1", "auto", &js.p) == FFLAB_E_NOT_SQUARE_FREE);
    CHECK(js.p == nullptr);
  }
  {
    Str js;
    CHECK(fflab_lfun(f, "1,x", "auto", &js.p) == FFLAB_E_PARSE);
    CHECK(fflab_lfun(f, "1,0,1", "bogus", &js.p) != FFLAB_OK);
    CHECK(fflab_lfun(nullptr, "1,0,1", "auto", &js.p) == FFLAB_E_INVALID_ARGUMENT);
  }
  fflab_field_free(f);
}

TEST_CASE("sweep, tables and verify through the C API") {
  const auto dir = tmp_cache();
  fflab_field* f = nullptr;
  fflab_cache* c = nullptr;
  REQUIRE(fflab_field_new(3, &f) == FFLAB_OK);
  REQUIRE(fflab_cache_open(dir.c_str(), &c) == FFLAB_OK);

  Str a, b;
  REQUIRE(fflab_sweep(f, c, 4, 1, &a.p) == FFLAB_OK);
  REQUIRE(fflab_sweep(f, c, 4, 2, &b.p) == FFLAB_OK);
  CHECK(a.s().find("\"count\": 54") != std::string::npos);
  CHECK(a.s().find("\"computed\": true") != std::string::npos);
  CHECK(b.s().find("\"computed\": false") != std::string::npos);
  const auto digest = [](const std::string& j) { return j.substr(j.find("\"digest\""), 80); };
  CHECK(digest(a.s()) == digest(b.s()));

  Str m;
  REQUIRE(fflab_moments_csv(f, c, 3, 4, 1, 2, 1e-10, 1, &m.p) == FFLAB_OK);
  CHECK(m.s().rfind("# units:", 0) == 0);

  Str d;
  REQUIRE(fflab_discrepancy_csv(f, c, 3, 4, 8, 1, 1, &d.p) == FFLAB_OK);
  CHECK(d.s().find("\n3,") != std::string::npos);
  CHECK(d.s().find("\n4,") != std::string::npos);

  Str hs;
  CHECK(fflab_heights_csv(f, c, 4, 0.05, 1, &hs.p) == FFLAB_E_EVEN_DEGREE);
  REQUIRE(fflab_heights_csv(f, c, 3, 0.05, 1, &hs.p) == FFLAB_OK);
  CHECK(hs.s().find("cor13_i") != std::string::npos);

  Str os, om;
  REQUIRE(fflab_omega_csv(f, c, 4, 1, -1, 1, &os.p, &om.p) == FFLAB_OK);
  CHECK(os.s().find("\n4,1,-1,") != std::string::npos);

  Str mc1, mc2, dens;
  REQUIRE(fflab_model_csv(3, 6, 7, 2000, 2, 1, -6, 8, 0, 0, 0, &mc1.p, nullptr) == FFLAB_OK);
  REQUIRE(fflab_model_csv(3, 6, 7, 2000, 2, 3, -6, 8, 400, 0, 0, &mc2.p, &dens.p) == FFLAB_OK);
  CHECK(mc1.s() == mc2.s());
  CHECK(!dens.s().empty());

  Str v;
  CHECK(fflab_verify("nope", 1, &v.p) == FFLAB_E_INVALID_ARGUMENT);
  REQUIRE(fflab_verify("fast", 1, &v.p) == FFLAB_OK);
  CHECK(v.s().find("\"ok\": true") != std::string::npos);

  fflab_cache_free(c);
  fflab_field_free(f);
  std::filesystem::remove_all(dir);
}
