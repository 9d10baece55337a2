#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"

using namespace swipt;
using namespace swipt::cli;

TEST(ParseNumber, PlainPiAndInfinity) {
    EXPECT_DOUBLE_EQ(parse_number("1e-5"), 1e-5);
    EXPECT_DOUBLE_EQ(parse_number(" 42 "), 42.0);
    EXPECT_DOUBLE_EQ(parse_number("pi"), std::numbers::pi);
    EXPECT_DOUBLE_EQ(parse_number("pi/3"), std::numbers::pi / 3.0);
    EXPECT_DOUBLE_EQ(parse_number("2*pi/3"), 2.0 * std::numbers::pi / 3.0);
    EXPECT_TRUE(std::isinf(parse_number("inf")));
    EXPECT_THROW(parse_number("abc"), ConfigError);
    EXPECT_THROW(parse_number("3x"), ConfigError);
    EXPECT_THROW(parse_number(""), ConfigError);
}

TEST(ParseList, CommaSeparated) {
    const auto v = parse_list("1e-5, 1e-4,pi/2");
    ASSERT_EQ(v.size(), 3u);
    EXPECT_DOUBLE_EQ(v[2], std::numbers::pi / 2.0);
}

TEST(Config, DefaultsWhenEmpty) {
    const auto c = parse_config_text("");
    EXPECT_EQ(c.system.lambda, 1e-5);
    EXPECT_EQ(c.nu_d, 0.3);
    EXPECT_FALSE(c.coop);
    EXPECT_FALSE(c.sweep);
    EXPECT_EQ(point_count(c), 1u);
}

TEST(Config, DecibelKeysConvertOnce) {
    const auto c = parse_config_text("[system]\nomega_db = -30\n[link]\np_t_db = 60\n");
    EXPECT_DOUBLE_EQ(c.system.omega, 1e-3);
    EXPECT_DOUBLE_EQ(c.p_t, 1e6);
    EXPECT_THROW(parse_config_text("[link]\np_t = 1\np_t_db = 0\n"), ConfigError);
}

TEST(Config, CoopSectionAndRelayPower) {
    auto c = parse_config_text("[link]\np_t = 5e4\n[coop]\nlambda_r = 0.1\ntheta0 = pi/2\n");
    ASSERT_TRUE(c.coop);
    EXPECT_DOUBLE_EQ(c.coop->theta0, std::numbers::pi / 2.0);
    EXPECT_TRUE(c.p_r_follows_p_t);
    EXPECT_DOUBLE_EQ(c.coop->p_r, 5e4);
    c = parse_config_text("[coop]\np_r_db = 30\n");
    EXPECT_FALSE(c.p_r_follows_p_t);
    EXPECT_DOUBLE_EQ(c.coop->p_r, 1e3);
}

TEST(Config, InlineComments) {
    const auto c = parse_config_text("[system]\nlambda = 1e-4   ; density\nalpha = 3 # exponent\n[coop]  \n");
    EXPECT_DOUBLE_EQ(c.system.lambda, 1e-4);
    EXPECT_DOUBLE_EQ(c.system.alpha, 3.0);
    EXPECT_TRUE(c.coop);
}

TEST(Config, SweepForms) {
    auto c = parse_config_text("[sweep]\nvariable = p_t_db\nrange = 20:80:5\n");
    ASSERT_EQ(c.sweep->display.size(), 13u);
    EXPECT_DOUBLE_EQ(c.sweep->display.back(), 80.0);
    EXPECT_DOUBLE_EQ(c.sweep->linear.front(), 100.0);
    EXPECT_DOUBLE_EQ(resolve(c, 12).p_t, 1e8);
    EXPECT_DOUBLE_EQ(resolve(c, 12).axis, 80.0);

    c = parse_config_text("[sweep]\nvariable = lambda\nlogrange = 1e-5:1e-3:3\n");
    ASSERT_EQ(c.sweep->linear.size(), 3u);
    EXPECT_NEAR(c.sweep->linear[1], 1e-4, 1e-18);

    c = parse_config_text("[sweep]\nvariable = nu_d\nvalues = 0.1, 0.5\n");
    EXPECT_DOUBLE_EQ(resolve(c, 1).nu_d, 0.5);
}

TEST(Config, SweepOfRelayPowerFollowsTransmitPower) {
    const auto c = parse_config_text("[coop]\n[sweep]\nvariable = p_t_db\nvalues = 40, 50\n");
    const auto p = resolve(c, 1);
    EXPECT_DOUBLE_EQ(p.p_t, 1e5);
    EXPECT_DOUBLE_EQ(p.p_r, 1e5);
}

TEST(Config, Errors) {
    EXPECT_THROW(parse_config_text("[bogus]\nx = 1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[system]\nlambdaa = 1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[system]\nalpha = 2\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[system]\nlambda = x\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[sweep]\nvariable = nope\nvalues = 1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[sweep]\nvariable = eta\nvalues = 6\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[sweep]\nvariable = nu_d\nvalues = 1\nrange = 0:1:1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[sweep]\nvariable = nu_d\nrange = 1:0:1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[sweep]\nvariable = alpha\nvalues = 3, 1.5\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[sim]\nn_reps = 50\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[sim]\nseed = -1x\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[sim]\nslot2_mode = other\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[model]\nnearfield = other\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[constraints]\nc_i = 0.1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[constraints]\nc_i = 0.1, 0.2\nc_h = 1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[constraints]\nc_i = 1.5\nc_h = 1\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[output]\nformat = xml\n"), ConfigError);
    EXPECT_THROW(parse_config_text("[system\n"), ConfigError);
}

TEST(Config, HashIsStableAndSensitive) {
    const auto a = parse_config_text("[system]\nlambda = 1e-4\n");
    const auto b = parse_config_text("[system]\nlambda = 0.0001\n\n");
    const auto c = parse_config_text("[system]\nlambda = 2e-4\n");
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_NE(config_hash(a), config_hash(c));
    EXPECT_EQ(config_hash(a).size(), 16u);
    // FNV-1a reference values.
    EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Output, CsvQuotingAndNumbers) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(196521745.6), "196521745.6");
    EXPECT_EQ(format_number(INFINITY), "inf");
    EXPECT_EQ(format_number(NAN), "nan");
}

TEST(Output, CsvLayout) {
    Table t{{"x", "y"}, {{1.0, "a"}, {2.5, ""}}};
    std::ostringstream out;
    write_csv(out, {"analytic", "00ff", 7, {{"nearfield", "paper"}}}, t);
    const std::string expected = std::string("# swipt ") + std::string(kVersion) +
                                 "\n# command: analytic\n# config_hash: 00ff\n# seed: 7\n"
                                 "# nearfield: paper\nx,y\n1,a\n2.5,\n";
    EXPECT_EQ(out.str(), expected);
    const auto j = to_json({"analytic", "00ff", 7, {}}, t);
    EXPECT_EQ(j["rows"][0]["x"], 1.0);
    EXPECT_TRUE(j["rows"][1]["y"].is_null());
}

TEST(Commands, OptimizeTableReproducesReferenceRow) {
    const auto c = parse_config_text("[constraints]\nc_i = 0.01\nc_h = 0.1\nmode = joint\n");
    const auto t = optimize_table(c);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][4].text, "true");
    EXPECT_NEAR(t.rows[0][5].number, 39470.14937, 1e-4);
    EXPECT_EQ(t.rows[0][9].text, "outage+harvest");
}

TEST(Commands, OptimizeReportsInfeasibleRows) {
    const auto c = parse_config_text("[constraints]\nc_i = 1e-4\nc_h = 1\n");
    const auto t = optimize_table(c);
    ASSERT_EQ(t.rows.size(), 2u);
    for (const auto& row : t.rows) {
        EXPECT_EQ(row[4].text, "false");
        EXPECT_NEAR(row[11].number, 5.9909e-4, 1e-7);
    }
    EXPECT_THROW(optimize_table(parse_config_text("[coop]\n[constraints]\nc_i = 0.1\nc_h = 1\n")), ConfigError);
    EXPECT_THROW(optimize_table(parse_config_text("")), ConfigError);
}

TEST(Commands, AnalyticTableColumns) {
    const auto t = analytic_table(parse_config_text("[coop]\n[sweep]\nvariable = lambda_r\nvalues = 0.01, 0.1\n"), false);
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.columns.front(), "lambda_r");
    EXPECT_EQ(t.rows[0].back().text, "ok");
    EXPECT_LT(t.rows[1][6].number, t.rows[0][6].number);
    EXPECT_LE(t.rows[0][6].number, t.rows[0][1].number);
}

TEST(Commands, SimulateNeedsReplications) {
    EXPECT_THROW(simulate_table(parse_config_text(""), false), ConfigError);
    Options o;
    o.reps = 50;
    EXPECT_THROW(load_config(o), ConfigError);
    o.reps = 2000;
    o.seed = 5;
    const auto c = load_config(o);
    const auto t = simulate_table(c, false);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][8].number, 2000.0);
    EXPECT_EQ(t.rows[0][9].text, "5");
    EXPECT_LT(std::abs(t.rows[0][13].number), 5.0);
}
