#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "projdim/error.hpp"
#include "projdim/pressure.hpp"
#include "projdim/system_io.hpp"

using namespace projdim;

namespace {

const std::filesystem::path kData = PROJDIM_DATA_DIR;

Errc code_of(const std::string& text) {
  try {
    parse_system(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return Errc::domain_error;
}

}  // namespace

TEST(SystemIo, BundledFilesLoad) {
  const SystemSpec r = load_system(kData / "rauzy.json");
  EXPECT_EQ(r.alphabet, rauzy_alphabet());
  EXPECT_TRUE(r.sosc_assumed);
  const SystemSpec t = load_system(kData / "triple9.json");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.alphabet[0], Matrix3::diagonal(9, 1, Rational(1, 9)));
  const SystemSpec g = load_system(kData / "rauzy_gamma_10.json");
  EXPECT_EQ(g.alphabet, rauzy_gamma_system(10).alphabet);
  EXPECT_EQ(g.conjugator, rauzy_gamma_system(10).conjugator);
}

TEST(SystemIo, RoundTrip) {
  const SystemSpec g = rauzy_gamma_system(2);
  const SystemSpec back = parse_system(system_to_json(g));
  EXPECT_EQ(back.alphabet, g.alphabet);
  EXPECT_EQ(back.probabilities, g.probabilities);
  EXPECT_EQ(back.conjugator, g.conjugator);
  EXPECT_EQ(back.label, g.label);
  EXPECT_EQ(system_to_json(back), system_to_json(g));
}

TEST(SystemIo, RejectsMalformedDocuments) {
  const std::string id = R"([["1","0","0"],["0","1","0"],["0","0","1"]])";
  EXPECT_EQ(code_of("{"), Errc::validation);
  EXPECT_EQ(code_of(R"({"matrices": [)" + id + R"(], "extra": 1})"), Errc::validation);
  EXPECT_EQ(code_of(R"({"matrices": [[["1","0"],["0","1"]]]})"), Errc::validation);
  EXPECT_EQ(code_of(R"({"matrices": [)" + id + R"(], "probabilities": ["1/2"]})"), Errc::validation);
  EXPECT_EQ(code_of(R"({"matrices": [[["2","0","0"],["0","1","0"],["0","0","1"]]]})"), Errc::validation);
  EXPECT_EQ(code_of(R"({"matrices": [[["x","0","0"],["0","1","0"],["0","0","1"]]]})"), Errc::validation);
  EXPECT_THROW(load_system(kData / "does_not_exist.json"), Error);
}

TEST(SystemIo, ProbabilitiesDefaultToUniform) {
  const SystemSpec s = parse_system(R"({"label": "x", "matrices": [[["1","0","0"],["0","1","0"],["0","0","1"]],
    [["1","1","0"],["0","1","0"],["0","0","1"]]]})");
  EXPECT_EQ(s.probabilities, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
}
