#include "midsift/error.hpp"
#include "midsift/signal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace midsift;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "midsift-csv-tests";
    fs::create_directories(dir);
    return dir / name;
}

Signal parse(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

std::size_t error_line(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const FormatError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST(Csv, RoundTripIsExact) {
    const double pi = std::numbers::pi;
    const std::vector<ToneSpec> tones{{0.5, 3 * pi / 64, 0.0}, {0.5, pi / 32, 0.0}};
    const auto s = generate_multitone(tones, 0.0, 1.0 / 64.0, 8193);
    const auto path = scratch("roundtrip.csv");
    save_csv(s, path);
    const auto back = load_csv(path);
    ASSERT_EQ(back.size(), s.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) worst = std::max(worst, std::abs(back[k] - s[k]));
    EXPECT_LT(worst, 1e-12);
    EXPECT_NEAR(back.dt(), s.dt(), 1e-15);
    EXPECT_EQ(back.t0(), 0.0);
}

TEST(Csv, SkipsHeaderCommentsAndBlankLines) {
    const auto s = parse("# sounding\ntime,value\n\n0,1.5\n1,2.5\n# mid comment\n2,3.5\n");
    EXPECT_EQ(s.values(), (std::vector<double>{1.5, 2.5, 3.5}));
    EXPECT_DOUBLE_EQ(s.dt(), 1.0);
}

TEST(Csv, NonUniformGridNamesTheRow) {
    const std::string text = "0,1\n1,2\n2.5,3\n";
    EXPECT_THROW(parse(text), FormatError);
    try {
        (void)parse(text);
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
    }
    EXPECT_EQ(error_line("time,value\n0,1\n1,2\n2.5,3\n"), 4u);
}

TEST(Csv, DegenerateFiles) {
    try {
        (void)parse("");
        FAIL() << "empty input accepted";
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("no samples"), std::string::npos);
    }
    EXPECT_THROW(parse("0,1\n"), FormatError);
    EXPECT_THROW(parse("0,1\n0,2\n"), FormatError);
    EXPECT_THROW(parse("1,1\n0,2\n"), FormatError);
    EXPECT_THROW(parse("0,1\n1,abc\n"), FormatError);
    EXPECT_THROW(parse("0,1\n1\n"), FormatError);
}

TEST(Csv, MissingFileNamesThePath) {
    const auto path = scratch("does-not-exist.csv");
    fs::remove(path);
    try {
        (void)load_csv(path);
        FAIL() << "missing file accepted";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
    }
}

TEST(Csv, WriterUsesHeaderAndFullPrecision) {
    std::ostringstream out;
    write_csv(Signal({0.1, 1.0 / 3.0}, 0.0, 0.5), out);
    EXPECT_EQ(out.str().substr(0, 11), "time,value\n");
    const auto back = parse(out.str());
    EXPECT_EQ(back[1], 1.0 / 3.0);
    EXPECT_EQ(back[0], 0.1);
}
