#include <doctest.h>

#include <fstream>

#include "hlf/config.hpp"
#include "test_util.hpp"

using namespace hlf;
using testutil::temp_path;

namespace {

std::string write_cfg(const std::string& text) {
    const std::string p = temp_path("cfg.txt");
    std::ofstream out(p);
    out << text;
    return p;
}

}  // namespace

TEST_CASE("config parsing basics") {
    const Config c = Config::load(write_cfg(
        "# comment line\n"
        "alpha = 0.02\n"
        "levels=5\n"
        "  name =  hello world \n"
        "\n"
        "flag_on = true\n"
        "flag_off = 0\n"
        "slopes = 0.5, 1.0, 1.5\n"
        "trailing = 7 # inline comment\n"));
    CHECK(c.get_double("alpha", 0.0) == doctest::Approx(0.02));
    CHECK(c.get_int("levels", 0) == 5);
    CHECK(c.get_string("name", "") == "hello world");
    CHECK(c.get_flag("flag_on", false));
    CHECK_FALSE(c.get_flag("flag_off", true));
    const auto slopes = c.get_double_list("slopes", {});
    REQUIRE(slopes.size() == 3);
    CHECK(slopes[1] == doctest::Approx(1.0));
    CHECK(c.get_int("trailing", 0) == 7);
}

TEST_CASE("defaults apply for missing keys") {
    Config c;
    CHECK(c.get_int("missing", 42) == 42);
    CHECK(c.get_double("missing", 1.5) == doctest::Approx(1.5));
    CHECK(c.get_string("missing", "d") == "d");
    CHECK(c.get_flag("missing", true));
    CHECK(c.get_double_list("missing", {1.0, 2.0}).size() == 2);
    CHECK_FALSE(c.has("missing"));
}

TEST_CASE("set and set_line override file values") {
    Config c = Config::load(write_cfg("k = 1\n"));
    CHECK(c.get_int("k", 0) == 1);
    c.set("k", "2");
    CHECK(c.get_int("k", 0) == 2);
    c.set_line("k=3");
    CHECK(c.get_int("k", 0) == 3);
    c.set_line("other = x ");
    CHECK(c.get_string("other", "") == "x");
    CHECK_THROWS_AS(c.set_line("no_equals_sign"), Error);
}

TEST_CASE("syntax errors carry line numbers") {
    try {
        Config::load(write_cfg("good = 1\nbad line without equals\n"));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    CHECK_THROWS_AS(Config::load(write_cfg("= novalue\n")), Error);
    CHECK_THROWS_AS(Config::load(temp_path("does_not_exist.cfg")), Error);
}

TEST_CASE("unknown keys are rejected with their line number") {
    const Config c = Config::load(write_cfg("alpha = 1\n# hi\nbogus = 2\n"));
    c.validate({"alpha", "bogus"});
    try {
        c.validate({"alpha"});
        FAIL("expected throw");
    } catch (const Error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bogus") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }
}

TEST_CASE("typed getters reject malformed values") {
    Config c;
    c.set("num", "abc");
    CHECK_THROWS_AS(c.get_int("num", 0), Error);
    CHECK_THROWS_AS(c.get_double("num", 0.0), Error);
    c.set("flagv", "maybe");
    CHECK_THROWS_AS(c.get_flag("flagv", false), Error);
    c.set("list", "1.0, x, 3.0");
    CHECK_THROWS_AS(c.get_double_list("list", {}), Error);
}

TEST_CASE("flag spellings") {
    Config c;
    for (const char* v : {"true", "1", "yes", "on"}) {
        c.set("f", v);
        CHECK(c.get_flag("f", false));
    }
    for (const char* v : {"false", "0", "no", "off"}) {
        c.set("f", v);
        CHECK_FALSE(c.get_flag("f", true));
    }
}
