#include "midsift/cli/commands.hpp"
#include "midsift/error.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace midsift;
using namespace midsift::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "midsift-cli-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "midsift");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

json read_json(const fs::path& p) {
    std::ifstream f(p);
    return json::parse(f);
}

std::size_t data_rows(const fs::path& p) {
    std::ifstream f(p);
    std::string line;
    std::size_t n = 0;
    std::getline(f, line);
    while (std::getline(f, line)) ++n;
    return n;
}

} // namespace

TEST(Config, RejectsUnknownKeysAndDoubleSources) {
    EXPECT_THROW(config_from_json(json{{"preset", "case1"}, {"colour", 1}}), InvalidArgument);
    EXPECT_THROW(config_from_json(json{{"preset", "case1"}, {"csv", "x.csv"}}), InvalidArgument);
    EXPECT_THROW(config_from_json(json{{"sift", {{"strategy", "fancy"}}}}), InvalidArgument);
    EXPECT_THROW(config_from_json(json{{"tones", json::array({{{"omega", 1.0}}})}}), InvalidArgument);
}

TEST(Config, ParsesAFullDocument) {
    const auto c = config_from_json(json::parse(R"({
        "tones": [{"amplitude": 0.5, "omega": 0.1}, {"amplitude": 0.5, "omega": 0.2, "phase": 1}],
        "grid": {"t0": -10, "dt": 0.5, "n": 200},
        "noise": {"sigma": 0.1, "seed": 3},
        "sift": {"strategy": "hybrid", "epsilon": 0.01, "norm": "sup", "boundary": "periodic"},
        "band": [0.1, 1.0],
        "pca": {"delta": 4, "copies": 8, "m1": 1, "m2": 3},
        "out": "somewhere"
    })"));
    ASSERT_TRUE(c.source.tones);
    EXPECT_EQ(c.source.tones->size(), 2u);
    EXPECT_EQ(c.source.grid->n, 200u);
    EXPECT_EQ(c.sift.strategy, SiftStrategy::hybrid);
    EXPECT_EQ(c.sift.norm, StopNorm::sup);
    EXPECT_EQ(c.boundary, BoundaryPolicy::periodic);
    EXPECT_EQ(c.pca.cutoffs->m2, 3u);
    EXPECT_EQ(c.out_dir, fs::path("somewhere"));
    const auto loaded = load_signal(c);
    EXPECT_EQ(loaded.signal.size(), 200u);
    EXPECT_EQ(loaded.signal.t0(), -10.0);
}

TEST(Config, EmptyToneList) {
    const auto c = config_from_json(json{{"tones", json::array()}, {"grid", {{"n", 10}}}});
    try {
        (void)load_signal(c);
        FAIL() << "empty tone list accepted";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("empty tone list"), std::string::npos);
    }
}

TEST(Presets, KnownNames) {
    for (const auto* name : {"eq2.1", "eq3.1", "case1", "case2", "case3", "sounding"}) {
        EXPECT_NO_THROW((void)find_preset(name)) << name;
    }
    EXPECT_THROW((void)find_preset("eq9.9"), InvalidArgument);
}

TEST(Generate, ThreeTonePreset) {
    const auto dir = fresh_dir("gen21");
    const auto r = invoke({"generate", "--preset", "eq2.1", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("4097"), std::string::npos);
    const auto s = load_csv(dir / "signal.csv");
    EXPECT_EQ(s.size(), 4097u);
    EXPECT_EQ(s.time(2048), 0.0);
    EXPECT_EQ(s[2048], 1.0);
}

TEST(Generate, DenseBenchmarkPreset) {
    const auto dir = fresh_dir("gen31");
    ASSERT_EQ(invoke({"generate", "-p", "eq3.1", "-o", dir.string()}).code, 0);
    EXPECT_EQ(data_rows(dir / "signal.csv"), 128u * 64u + 1u);
    const auto s = load_csv(dir / "signal.csv");
    EXPECT_EQ(s.t0(), 0.0);
    EXPECT_NEAR(s.t_end(), 128.0, 1e-9);
}

TEST(Decompose, ThreeToneSummary) {
    const auto dir = fresh_dir("dec21");
    const auto r = invoke({"decompose", "--preset", "eq2.1", "--strategy", "midpoint", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto summary = read_json(dir / "summary.json");
    EXPECT_EQ(summary["schema"], 1);
    ASSERT_GE(summary["imfs"].size(), 3u);
    const double w0 = std::numbers::pi / 256;
    const double bin = 2 * std::numbers::pi / 4097;
    const double targets[] = {12 * w0, 10 * w0, 8 * w0};
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_TRUE(fs::exists(dir / summary["imfs"][i]["file"].get<std::string>()));
        EXPECT_LE(std::abs(summary["imfs"][i]["peak_omega"].get<double>() - targets[i]), bin);
    }
    EXPECT_TRUE(fs::exists(dir / "residual.csv"));
    EXPECT_FALSE(summary["imf1_filter_alpha"].empty());
}

TEST(Decompose, ConstantCsvInput) {
    const auto dir = fresh_dir("decconst");
    save_csv(Signal(std::vector<double>(32, 4.0), 0.0, 1.0), dir / "flat.csv");
    const auto r = invoke({"decompose", "--input", (dir / "flat.csv").string(), "--out", (dir / "o").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_json(dir / "o" / "summary.json")["imf_count"], 0);
    EXPECT_EQ(load_csv(dir / "o" / "residual.csv").values(), std::vector<double>(32, 4.0));
}

TEST(Decompose, IterationCapIsFlagged) {
    const auto dir = fresh_dir("deccap");
    const auto r = invoke({"decompose", "-p", "case2", "--epsilon", "1e-12", "--max-iter", "5",
                           "--max-imfs", "2", "-o", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto summary = read_json(dir / "summary.json");
    for (const auto& imf : summary["imfs"]) {
        EXPECT_FALSE(imf["converged"].get<bool>());
        EXPECT_EQ(imf["iterations"], 5);
    }
}

TEST(Compare, CoversBothStrategiesAndHybridOnRequest) {
    const auto dir = fresh_dir("cmp");
    const auto r = invoke({"compare", "-p", "case1", "--hybrid", "--parallel", "-o", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = read_json(dir / "compare.json");
    std::vector<std::string> names;
    for (const auto& s : report["strategies"]) names.push_back(s["strategy"]);
    EXPECT_EQ(names, (std::vector<std::string>{"classical", "midpoint", "hybrid"}));
    EXPECT_LT(report["strategies"][1]["imfs"][0]["iterations"].get<int>(),
              report["strategies"][0]["imfs"][0]["iterations"].get<int>());
}

TEST(Compare, ParallelMatchesSequential) {
    const auto a = fresh_dir("cmp-seq");
    const auto b = fresh_dir("cmp-par");
    ASSERT_EQ(invoke({"compare", "-p", "case2", "--hybrid", "-o", a.string()}).code, 0);
    ASSERT_EQ(invoke({"compare", "-p", "case2", "--hybrid", "--parallel", "-o", b.string()}).code, 0);
    EXPECT_EQ(read_json(a / "compare.json"), read_json(b / "compare.json"));
}

TEST(Spectrum, SlopeBandIsOptional) {
    const auto dir = fresh_dir("spec");
    ASSERT_EQ(invoke({"spectrum", "-p", "sounding", "-o", dir.string()}).code, 0);
    EXPECT_FALSE(read_json(dir / "spectrum.json").contains("slope_fit"));
    ASSERT_EQ(invoke({"spectrum", "-p", "sounding", "--band", "0.3", "2.0", "-o", dir.string()}).code, 0);
    EXPECT_TRUE(read_json(dir / "spectrum.json").contains("slope_fit"));
    EXPECT_EQ(data_rows(dir / "spectrum.csv"), 2049u);
}

TEST(Pca, EigenvaluesAndGroups) {
    const auto dir = fresh_dir("pca");
    const auto r = invoke({"pca", "-p", "sounding", "--delta", "96", "--copies", "16", "--m1", "3",
                           "--m2", "11", "-o", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = read_json(dir / "pca.json");
    const auto ev = doc["eigenvalues"].get<std::vector<double>>();
    for (std::size_t i = 1; i < ev.size(); ++i) EXPECT_LE(ev[i], ev[i - 1]);
    EXPECT_LT(doc["max_partition_error"].get<double>(), 1e-9 * 230.0);
    EXPECT_EQ(data_rows(dir / "eigenvalues.csv"), 16u);
    EXPECT_TRUE(fs::exists(dir / "pca_waves.csv"));
}

TEST(Pca, AutoDelta) {
    const auto dir = fresh_dir("pca-auto");
    ASSERT_EQ(invoke({"pca", "-p", "case2", "-o", dir.string()}).code, 0);
    EXPECT_TRUE(read_json(dir / "pca.json")["delta_auto"].get<bool>());
}

TEST(Pca, TooManyCopiesNamesTheMinimumLength) {
    const auto dir = fresh_dir("pca-short");
    const auto r = invoke({"pca", "-p", "case1", "--delta", "600", "--copies", "9", "-o", dir.string()});
    EXPECT_EQ(r.code, kExitInvalidArgument);
    EXPECT_NE(r.err.find("4809"), std::string::npos) << r.err;
}

TEST(Atmospheric, RecoversThePlantedSlope) {
    const auto dir = fresh_dir("atm");
    const auto r = invoke({"atmospheric", "-p", "sounding", "--band", "0.3", "2.0", "-o", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = read_json(dir / "atmospheric.json");
    EXPECT_NEAR(doc["slope"].get<double>(), -2.7, 0.15);
    EXPECT_TRUE(doc.contains("r_squared"));
    EXPECT_NEAR(doc["mean"].get<double>(), 220.0, 0.5);
}

TEST(Atmospheric, PureNoiseRunsWithoutWaveImfs) {
    const auto dir = fresh_dir("atm-noise");
    const auto cfg = dir / "noise.json";
    std::ofstream(cfg) << R"({"tones": [{"amplitude": 0.0, "omega": 0.0}],
                              "grid": {"n": 2048}, "noise": {"sigma": 1.0, "seed": 5},
                              "band": [0.2, 3.0], "wave_imfs": []})";
    const auto r = invoke({"atmospheric", "--config", cfg.string(), "-o", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(read_json(dir / "atmospheric.json")["slope"].get<double>(), 0.0, 0.3);
}

TEST(Atmospheric, BandIsRequired) {
    const auto r = invoke({"atmospheric", "-p", "sounding", "-o", fresh_dir("atm-noband").string()});
    EXPECT_EQ(r.code, kExitInvalidArgument);
}

TEST(ExitCodes, MapToErrorClasses) {
    const auto dir = fresh_dir("codes");
    EXPECT_EQ(invoke({}).code, kExitInvalidArgument);
    EXPECT_EQ(invoke({"decompose", "--bogus"}).code, kExitInvalidArgument);
    EXPECT_EQ(invoke({"decompose", "-p", "nope", "-o", dir.string()}).code, kExitInvalidArgument);
    EXPECT_EQ(invoke({"decompose", "-p", "case1", "--strategy", "x", "-o", dir.string()}).code,
              kExitInvalidArgument);
    EXPECT_EQ(invoke({"decompose", "-p", "case1", "--epsilon", "-1", "-o", dir.string()}).code,
              kExitInvalidArgument);

    const auto missing = dir / "missing.csv";
    const auto r = invoke({"decompose", "--input", missing.string(), "-o", dir.string()});
    EXPECT_EQ(r.code, kExitFormat);
    EXPECT_NE(r.err.find(missing.string()), std::string::npos);

    std::ofstream(dir / "bad.csv") << "0,1\n1,2\n2.5,3\n";
    EXPECT_EQ(invoke({"decompose", "--input", (dir / "bad.csv").string(), "-o", dir.string()}).code,
              kExitFormat);

    // A broken config is a configuration error, not an input-data error.
    std::ofstream(dir / "broken.json") << "{ not json";
    EXPECT_EQ(invoke({"decompose", "--config", (dir / "broken.json").string()}).code,
              kExitInvalidArgument);

    // A flat input leaves no positive spectral bins to fit.
    save_csv(Signal(std::vector<double>(64, 1.0), 0.0, 1.0), dir / "flat.csv");
    EXPECT_EQ(invoke({"atmospheric", "--input", (dir / "flat.csv").string(), "--band", "0.5", "2",
                      "-o", dir.string()}).code,
              kExitInvalidArgument);
}

TEST(ExitCodes, UnwritableOutputIsCheckedFirst) {
    const auto dir = fresh_dir("blocked");
    std::ofstream(dir / "file") << "x";
    const auto r = invoke({"decompose", "-p", "case1", "-o", (dir / "file" / "sub").string()});
    EXPECT_EQ(r.code, kExitInvalidArgument);
    EXPECT_FALSE(fs::exists(dir / "file" / "sub"));
}

TEST(Help, ExitsCleanly) {
    const auto r = invoke({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("decompose"), std::string::npos);
}
