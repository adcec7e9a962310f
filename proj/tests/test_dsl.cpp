#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "paramech/dsl.hpp"
#include "paramech/random.hpp"

namespace paramech {
namespace {

const Expr z1{Symbol::z(1)};
const Expr zb1{Symbol::zb(1)};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ParseError parse_error(const std::string& src, int dim = 1, std::set<std::string> params = {}) {
  try {
    parse_expression(src, dim, params);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for '" << src << "'";
  return ParseError(0, 0, "", "");
}

TEST(Parse, Examples) {
  EXPECT_EQ(parse_expression("z1*zb1", 1), z1 * zb1);
  Expr m{Symbol::param("m")}, k{Symbol::param("k")};
  Expr half(ExactPara(Rational(1, 2), Rational(0)));
  EXPECT_TRUE(canonically_equal(parse_expression("(1/2)*m*zb1^2 - (1/2)*k*z1^2", 1, {"m", "k"}),
                                half * m * pow(zb1, 2) - half * k * pow(z1, 2)));
  ParseError e = parse_error("z1 +");
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 5);
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_expression("-z1^2", 1), -pow(z1, 2));
  EXPECT_EQ(parse_expression("2^3^2", 1), Expr(512));
  EXPECT_EQ(parse_expression("z1^(-1)^2", 1), z1);
  EXPECT_THROW(parse_expression("z1^2^-1", 1), ParseError);
  EXPECT_EQ(parse_expression("z1 - zb1 - 1", 1), z1 - zb1 - 1);
  EXPECT_EQ(parse_expression("z1/zb1*2", 1), z1 / zb1 * 2);
  EXPECT_EQ(parse_expression("2*j + t", 1), 2 * Expr::j() + Expr(Symbol::time()));
  EXPECT_EQ(parse_expression("cosh(z1)", 1), cosh(z1));
  EXPECT_EQ(parse_expression("0.25e1", 1), Expr(ExactPara(Rational(5, 2), Rational(0))));
}

TEST(Parse, Errors) {
  EXPECT_NE(std::string(parse_error("q*z1").what()).find("undeclared symbol"), std::string::npos);
  EXPECT_NE(std::string(parse_error("z0").what()).find("index"), std::string::npos);
  EXPECT_NE(std::string(parse_error("z2", 1).what()).find("index"), std::string::npos);
  EXPECT_NE(std::string(parse_error("z1^1.5").what()).find("integer"), std::string::npos);
  EXPECT_NE(std::string(parse_error("z1^z1").what()).find("integer"), std::string::npos);
  EXPECT_EQ(parse_error("1/0").column(), 2);
  EXPECT_EQ(parse_error("sin z1").column(), 5);
  ParseError multi = parse_error("z1 +\n  zb1 $");
  EXPECT_EQ(multi.line(), 2);
  EXPECT_EQ(multi.column(), 7);
  EXPECT_EQ(multi.token(), "$");
  EXPECT_EQ(parse_error("(z1").column(), 4);
  EXPECT_EQ(parse_error("").column(), 1);
}

const char* const kCorpus[] = {
    "z1",
    "zb1",
    "j",
    "t",
    "-z1",
    "z1*zb1",
    "z1 + zb1",
    "z1 - zb1",
    "2*z1*zb1",
    "1/2*zb1^2",
    "(1/2)*m*zb1^2 - (1/2)*k*z1^2",
    "z1^3 + 3*z1^2*zb1 + 3*z1*zb1^2 + zb1^3",
    "(z1 + zb1)^2",
    "(z1 - zb1)^3",
    "j*z1*zb1",
    "(1 + j)*z1",
    "(1/2 - 1/3*j)*z1^2",
    "z1/zb1",
    "1/(z1 + 1)",
    "z1^-2",
    "(z1 + j)/(zb1 - j)",
    "sin(z1)",
    "cos(zb1)",
    "exp(j*t)",
    "cosh(z1 + zb1)",
    "sinh(2*z1)",
    "exp(-z1*zb1)",
    "sin(z1)^2 + cos(z1)^2",
    "m*z1*zb1 + k",
    "-m*(zb1^2 - z1^2)/2",
    "t*z1",
    "t^2*zb1 - j*t",
    "z1*zb2 + z2*zb1",
    "z1*zb1 + 2*z2*zb2 + z1*zb2",
    "z1^2*zb2 + z2*zb1 + zb1^3",
    "(z1 + z2)*(zb1 - zb2)",
    "a*z1*zb1 + b*z2*zb2 + g*(z1*zb2 + z2*zb1)",
    "0.5*z1 - 0.25*zb2",
    "1.5e2*z1",
    "-(-z1)",
    "--z1",
    "z1 - -zb1",
    "2^10",
    "z1^0",
    "((z1))",
    "exp(sin(cos(z1)))",
    "z1*zb1/(1 + z1*zb1)",
    "j*j",
    "(j + 1)*(j - 1)",
    "z2^2*zb2^2 - 2*j*z1*zb1*z2 + t*exp(zb2)",
};

TEST(Parse, RoundTripCorpus) {
  std::set<std::string> params{"m", "k", "a", "b", "g"};
  ASSERT_EQ(std::size(kCorpus), 50u);
  for (const char* src : kCorpus) {
    Expr e = parse_expression(src, 2, params);
    std::string rendered = to_string(e);
    Expr again = parse_expression(rendered, 2, params);
    EXPECT_TRUE(canonically_equal(e, again)) << src << " -> " << rendered;
  }
}

TEST(Parse, RandomRoundTrip) {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    Expr e = random_expression(rng, 2, 4);
    std::string rendered = to_string(e);
    Expr again;
    ASSERT_NO_THROW(again = parse_expression(rendered, 2)) << rendered;
    ASSERT_TRUE(canonically_equal(e, again)) << rendered;
  }
}

bool position_inside(const std::string& src, const ParseError& e) {
  std::vector<std::size_t> lengths{0};
  for (char c : src) {
    if (c == '\n')
      lengths.push_back(0);
    else
      ++lengths.back();
  }
  if (e.line() < 1 || e.line() > static_cast<int>(lengths.size())) return false;
  return e.column() >= 1 && e.column() <= static_cast<int>(lengths[e.line() - 1]) + 1;
}

TEST(ParseProperty, FuzzNeverCrashes) {
  Rng rng(72);
  const std::string alphabet = "z zb j t 0123456789 .e+-*/^() sin cos exp cosh sinh m \n\t$#,";
  std::uniform_int_distribution<int> length(0, 40), pick(0, static_cast<int>(alphabet.size()) - 1);
  std::uniform_int_distribution<int> corpus_pick(0, static_cast<int>(std::size(kCorpus)) - 1), mode(0, 2);
  int errors = 0, successes = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string src;
    if (mode(rng) == 0) {
      int n = length(rng);
      for (int i = 0; i < n; ++i) src += alphabet[pick(rng)];
    } else {
      // Mutate a valid expression by a few character edits.
      src = kCorpus[corpus_pick(rng)];
      for (int edits = 1 + trial % 3; edits > 0 && !src.empty(); --edits) {
        std::uniform_int_distribution<std::size_t> at(0, src.size() - 1);
        std::size_t p = at(rng);
        switch (mode(rng)) {
          case 0: src.erase(p, 1); break;
          case 1: src.insert(p, 1, alphabet[pick(rng)]); break;
          default: src[p] = alphabet[pick(rng)];
        }
      }
    }
    try {
      parse_expression(src, 2, {"m", "k", "a", "b", "g"});
      ++successes;
    } catch (const ParseError& e) {
      ++errors;
      ASSERT_TRUE(position_inside(src, e)) << "'" << src << "' -> " << e.what();
    }
  }
  EXPECT_GT(errors, 0);
  EXPECT_GT(successes, 0);
}

TEST(ParseProperty, DeepNestingIsAnError) {
  EXPECT_THROW(parse_expression(std::string(100000, '('), 1), ParseError);
  EXPECT_THROW(parse_expression(std::string(100000, '-') + "z1", 1), ParseError);
  EXPECT_THROW(parse_expression("z1^99999", 1), ParseError);
}

TEST(Constants, Literals) {
  EXPECT_EQ(parse_constant("2 - j"), ExactPara(Rational(2), Rational(-1)));
  EXPECT_EQ(parse_constant("1/3"), ExactPara(Rational(1, 3), Rational(0)));
  EXPECT_THROW(parse_constant("z1"), ParseError);
  EXPECT_THROW(parse_constant("sin(1)"), Error);
}

// ---- model documents --------------------------------------------------------

std::string model_error_path(const std::string& doc) {
  try {
    parse_model(doc);
  } catch (const ModelError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(Model, Examples) {
  ModelDocument d = parse_model(
      R"({"kind":"hamiltonian","dim":1,"function":"z1*zb1","initial":[[1,0,1,0]],"time":{"t0":0,"t1":1,"dt":0.001}})");
  EXPECT_EQ(d.kind, ModelKind::Hamiltonian);
  EXPECT_EQ(d.expr, z1 * zb1);
  EXPECT_EQ(d.integrator, "rk4");
  EXPECT_EQ(d.output, "-");
  ASSERT_EQ(d.initial.size(), 1u);
  EXPECT_EQ(d.initial[0][2], 1.0);
  EXPECT_EQ(d.time->dt, 0.001);
  EXPECT_EQ(model_error_path(R"({"kind":"hamiltonian","dim":1})"), "function");
  EXPECT_EQ(model_error_path(
                R"({"kind":"hamiltonian","dim":1,"function":"z1","time":{"t0":0,"t1":1,"dt":0}})"),
            "time.dt");
}

TEST(Model, Validation) {
  const std::string head = R"({"kind":"hamiltonian","dim":1,"function":"z1*zb1")";
  EXPECT_EQ(model_error_path("{"), "");
  EXPECT_EQ(model_error_path("[1]"), "");
  EXPECT_EQ(model_error_path(head + R"(,"colour":1})"), "colour");
  EXPECT_EQ(model_error_path(head + R"(,"time":{"t0":0,"t1":1,"dt":0.1,"n":3}})"), "time.n");
  EXPECT_EQ(model_error_path(head + R"(,"time":{"t0":1,"t1":0,"dt":0.1}})"), "time.t1");
  EXPECT_EQ(model_error_path(head + R"(,"initial":[[1,0,1,0],[0,0,0,0]]})"), "initial");
  EXPECT_EQ(model_error_path(head + R"(,"initial":[[1,0,1]]})"), "initial[0]");
  EXPECT_EQ(model_error_path(head + R"(,"initial":[[1,0,"x",0]]})"), "initial[0][2]");
  EXPECT_EQ(model_error_path(head + R"(,"integrator":"euler"})"), "integrator");
  EXPECT_EQ(model_error_path(head + R"(,"params":{"z1":2}})"), "params.z1");
  EXPECT_EQ(model_error_path(head + R"(,"params":{"m":"z1"}})"), "params.m");
  EXPECT_EQ(model_error_path(R"({"kind":"hamiltonian","dim":0,"function":"1"})"), "dim");
  EXPECT_EQ(model_error_path(R"({"kind":"hamiltonian","dim":1.5,"function":"1"})"), "dim");
  EXPECT_EQ(model_error_path(R"({"kind":"newtonian","dim":1,"function":"1"})"), "kind");
  EXPECT_EQ(model_error_path(R"({"kind":"hamiltonian","dim":1,"function":"q*z1"})"), "function");
  EXPECT_EQ(model_error_path(head + R"(,"time":{"t0":0,"t1":0,"dt":0.1}})"), "<no error>");
}

TEST(Model, ParamFormats) {
  ModelDocument d = parse_model(
      R"({"kind":"lagrangian","dim":1,"function":"a*z1*zb1 + b + c","params":{"a":0.1,"b":[1,-2],"c":"1/3 + j"}})");
  EXPECT_EQ(d.params.at("a"), ExactPara(Rational(1, 10), Rational(0)));
  EXPECT_EQ(d.params.at("b"), ExactPara(Rational(1), Rational(-2)));
  EXPECT_EQ(d.params.at("c"), ExactPara(Rational(1, 3), Rational(1)));
  LagrangianModel m = d.lagrangian();
  EXPECT_EQ(m.params.size(), 3u);
  EXPECT_THROW(d.hamiltonian(), UsageError);
}

const char* const kModels[] = {"hamiltonian_product", "hamiltonian_constant", "hamiltonian_coupled",
                               "lagrangian_product",  "lagrangian_oscillator", "lagrangian_cubic"};

TEST(Model, GoldenRoundTrip) {
  const bool update = std::getenv("PARAMECH_UPDATE_GOLDEN") != nullptr;
  for (const char* name : kModels) {
    ModelDocument d = parse_model(slurp(std::string(PARAMECH_TEST_DATA) + "/" + name + ".json"));
    std::string canonical = to_json(d) + "\n";
    std::string golden_path = std::string(PARAMECH_GOLDEN_DIR) + "/model_" + name + ".json";
    if (update) std::ofstream(golden_path) << canonical;
    EXPECT_EQ(canonical, slurp(golden_path)) << name;
    ModelDocument again = parse_model(canonical);
    EXPECT_EQ(to_json(again) + "\n", canonical) << name;
    EXPECT_EQ(again.expr, d.expr);
    EXPECT_EQ(again.params, d.params);
    EXPECT_EQ(again.initial, d.initial);
  }
}

}  // namespace
}  // namespace paramech
