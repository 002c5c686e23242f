#include "bhst/error.hpp"
#include "bhst/report.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace bhst;

TEST(Catalog, FamilySizes) {
  EXPECT_EQ(catalog_family(CatalogFamily::kElliptic).size(), 13u);
  EXPECT_EQ(catalog_family(CatalogFamily::kK3).size(), 14u);
  EXPECT_EQ(catalog_family(CatalogFamily::kExample).size(), 4u);
}

TEST(Catalog, EntriesAreValidAtTheirPrimes) {
  for (const auto& e : catalog_entries()) {
    EXPECT_NO_THROW(BHMatrix::validate(e.matrix, e.verification_prime)) << e.name;
    if (e.family != CatalogFamily::kExample) EXPECT_EQ(BHMatrix::validate(e.matrix, 0).cy_check(), CyClass::kStrict);
  }
}

TEST(Catalog, EllipticEntriesAreDistinctAndTyped) {
  std::set<IntMatrix> seen;
  for (const auto& e : catalog_family(CatalogFamily::kElliptic)) {
    EXPECT_TRUE(seen.insert(e.matrix).second) << e.name;
    const auto a = BHMatrix::validate(e.matrix, 0);
    // Type from the multiset J A^{-1}.
    std::multiset<Rational> x;
    for (int j = 0; j < 3; ++j) {
      Rational s = 0;
      for (int i = 0; i < 3; ++i) s += a.inverse()[i][j];
      x.insert(s);
    }
    const std::map<std::string, std::multiset<Rational>> types = {
        {"I", {Rational(1, 3), Rational(1, 3), Rational(1, 3)}},
        {"II", {Rational(1, 2), Rational(1, 4), Rational(1, 4)}},
        {"III", {Rational(1, 2), Rational(1, 3), Rational(1, 6)}}};
    EXPECT_EQ(types.at(e.label), x) << e.name;
    EXPECT_EQ((e.verification_prime - 1) % static_cast<std::uint64_t>(a.abs_det()), 0u) << e.name;
  }
}

TEST(Catalog, NuTotalsMatchSingularityRows) {
  std::multiset<std::int64_t> totals;
  for (const auto& e : catalog_family(CatalogFamily::kK3))
    if (!e.singularities.empty()) totals.insert(e.nu_registry());
  EXPECT_EQ(totals, (std::multiset<std::int64_t>{11, 9, 7, 9, 5, 1, 6, 9, 11, 5, 2, 3}));
  EXPECT_EQ(find_k3({2, 3, 10, 15})->nu_registry(), 11);
  EXPECT_EQ(find_k3({4, 4, 4, 4})->nu_registry(), 0);
  EXPECT_FALSE(find_k3({2, 2, 2, 2}).has_value());
}

TEST(Catalog, ChecksumIsStable) {
  EXPECT_EQ(catalog_checksum(), catalog_checksum());
  EXPECT_NE(catalog_checksum(), fnv1a(""));
  EXPECT_EQ(fnv1a(""), 14695981039346656037ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Json, SupertraceRoundTrip) {
  const auto a = BHMatrix::validate({{2, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 10, 0}, {0, 0, 0, 15}}, 1801);
  const StateSpace s(a, j_subgroup(a));
  const auto r = supertrace_padic(s, 4);
  const Json j = supertrace_json(r);
  const auto back = supertrace_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.residue, r.residue);
  EXPECT_EQ(back.lifted, r.lifted);
  ASSERT_EQ(back.terms.size(), r.terms.size());
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    EXPECT_EQ(back.terms[i].value, r.terms[i].value);
    EXPECT_EQ(back.terms[i].gamma_args, r.terms[i].gamma_args);
    EXPECT_EQ(back.terms[i].generator.gamma, r.terms[i].generator.gamma);
    EXPECT_EQ(back.terms[i].generator.monomial_string(), r.terms[i].generator.monomial_string());
  }
  EXPECT_EQ(supertrace_json(back), j);
}

TEST(Json, VerificationRoundTrip) {
  const auto a = BHMatrix::validate({{2, 1, 0}, {0, 2, 1}, {0, 0, 3}}, 97);
  const StateSpace s(a, j_subgroup(a));
  const auto r = verify_conjecture(s, 3);
  EXPECT_EQ(r.verdict, Verdict::kEqual);
  const Json j = verification_json(r);
  const auto back = verification_from_json(Json::parse(j.dump()));
  EXPECT_EQ(verification_json(back), j);
  EXPECT_EQ(back.count.projective, 80u);
}

TEST(Json, CountRoundTripWithNu) {
  const auto a = BHMatrix::validate({{3, 0, 0, 0}, {0, 3, 0, 0}, {0, 0, 6, 0}, {0, 0, 0, 6}}, 1297);
  const auto r = crepant_count(a, j_subgroup(a));
  const Json j = count_json(r);
  const auto back = count_from_json(j);
  EXPECT_EQ(back.nu, r.nu);
  EXPECT_EQ(back.crepant, r.crepant);
  EXPECT_EQ(count_json(back), j);
  Json broken = j;
  broken["method"] = "guess";
  EXPECT_THROW(count_from_json(broken), Error);
}

TEST(Json, EnvelopeHashesInput) {
  const Json in = {{"matrix", {{2, 1}, {0, 3}}}, {"p", 7}};
  const Json e1 = envelope("validate", in, Json::object());
  const Json e2 = envelope("validate", in, Json::object());
  EXPECT_EQ(e1, e2);
  EXPECT_EQ(e1.at("version"), kToolVersion);
  Json other = in;
  other["p"] = 13;
  EXPECT_NE(envelope("validate", other, Json::object()).at("input_hash"), e1.at("input_hash"));
}

TEST(Json, SectorsListsEveryGenerator) {
  const auto a = BHMatrix::validate({{2, 1, 0}, {0, 3, 0}, {0, 0, 3}}, 19);
  const StateSpace s(a, j_subgroup(a));
  const Json j = sectors_json(s);
  EXPECT_EQ(j.at("generator_count"), 4);
  EXPECT_EQ(j.at("generators").size(), 4u);
  EXPECT_EQ(j.at("transpose_group_order"), 6);
}
