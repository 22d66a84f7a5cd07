#include "doctest.h"
#include "support.hpp"

#include <filesystem>

using namespace gcm;
using namespace gcm::test;

namespace {

std::string error_of(const std::string &text, ErrorKind *kind = nullptr) {
  try {
    parse_model(text);
  } catch (const Error &e) {
    if (kind)
      *kind = e.kind();
    return e.what();
  }
  return "";
}

} // namespace

TEST_CASE("Kodaira-Thurston from text") {
  ModelFile mf = parse_model("dim = 4\nd e4 = 1 e1^e2\nH = 0");
  CHECK(mf.dim == 4);
  CHECK(mf.model->structure()[3] == Form::gens(4, {1, 2}));
  CHECK(de_rham_betti(*mf.model) == std::vector<int>{1, 3, 4, 3, 1});
  ModelFile tw = parse_model("dim = 4\nd e4 = 1 e1^e2\nH = 1 e1^e2^e3");
  CHECK(tw.model->H() == Form::gens(4, {1, 2, 3}));
}

TEST_CASE("blade order and signs") {
  ModelFile mf = parse_model("dim = 4\nH = e3^e2^e1 + 3/2i e4^e1^e2");
  CHECK(mf.model->H() == Form::gens(4, {1, 2, 3}, Scalar(-1)) + Form::gens(4, {1, 2, 4}, Scalar::frac(3, 2, true)));
}

TEST_CASE("errors carry line and column") {
  ErrorKind k;
  CHECK(error_of("dim = 3", &k) == "DimensionOdd: line 1, col 7: dim = 3 is odd");
  CHECK(k == ErrorKind::DimensionOdd);
  CHECK(error_of("dim = 4\nd e4 = e1^e7", &k).find("line 2, col 8") != std::string::npos);
  CHECK(k == ErrorKind::UnknownGenerator);
  error_of("dim = 4\nH = e1^e2 e3", &k);
  CHECK(k == ErrorKind::SyntaxError);
  error_of("dim = 4\nH = (e1^e2^e3", &k);
  CHECK(k == ErrorKind::SyntaxError);
  error_of("dim = 4\n[symplectic s]\nomega = t e1^e2", &k);
  CHECK(k == ErrorKind::UnknownGenerator);
  error_of("dim = 4\n[unknown s]", &k);
  CHECK(k == ErrorKind::SyntaxError);
  error_of("dim = 4\n[gk g]\npair = a, b", &k);
  CHECK(k == ErrorKind::SyntaxError);
  error_of("dim = 4\nH = e1^e2", &k);
  CHECK(k == ErrorKind::SyntaxError);
}

TEST_CASE("canonical emission is idempotent on the corpus") {
  int files = 0;
  for (const std::string dir : {corpus_path(""), corpus_path("faults")})
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() != ".gcm")
        continue;
      ModelFile mf;
      try {
        mf = load_model(entry.path().string());
      } catch (const Error &) {
        continue;
      }
      ++files;
      std::string once = emit_model(mf);
      ModelFile again = parse_model(once);
      CHECK_MESSAGE(emit_model(again) == once, entry.path().filename().string());
      CHECK(again.model->structure() == mf.model->structure());
      CHECK(again.model->H() == mf.model->H());
    }
  CHECK(files > 15);
}

TEST_CASE("random models round-trip") {
  SampleRng rng(60);
  for (int k = 0; k < 20; ++k) {
    std::string text = "dim = 6\n";
    Form H = rng.form(6, 3);
    for (int j = 4; j <= 6; ++j)
      text += "d e" + std::to_string(j) + " = " + rng.form(6, 2).str() + "\n";
    text += "H = " + H.str() + "\n";
    ModelFile mf = parse_model(text);
    CHECK(mf.model->H() == H);
    std::string once = emit_model(mf);
    CHECK(emit_model(parse_model(once)) == once);
  }
}

TEST_CASE("family blocks") {
  ModelFile mf = load_model(corpus_path("family-holomorphic.gcm"));
  REQUIRE(mf.families.size() == 1);
  const FamilySpec &f = mf.families[0].spec;
  CHECK(f.vars == std::vector<std::string>{"t1", "t2"});
  CHECK(f.samples.size() == 2);
  Vec pt = parse_point("t1=1/2,t2=0", f.vars);
  CHECK(pt == Vec{Scalar::frac(1, 2), Scalar(0)});
  CHECK_THROWS_AS(parse_point("t3=1", f.vars), Error);
  CHECK_THROWS_AS(parse_point("t1=1", f.vars), Error);
}
