#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "gaslab/cli.hpp"
#include "gaslab/config.hpp"
#include "gaslab/run_io.hpp"

using namespace gaslab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path(fs::path("tmp_test") / tag) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("sha256 matches the reference vectors", "[cli_io]") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");

    TempDir tmp("sha");
    write_text_file((tmp.path / "f.txt").string(), "abc");
    CHECK(sha256_file((tmp.path / "f.txt").string()) == sha256_hex("abc"));
}

TEST_CASE("format_double round trips exactly", "[cli_io]") {
    // strtod, not std::stod: stod throws out_of_range on subnormals (ERANGE)
    for (double v : {0.1, 1.0 / 3.0, -0.0, 42.0, 707.1067811865476, 1e300, 5e-324}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(format_double(42.0) == "42");
}

TEST_CASE("kinetic config round trips through its rendering", "[cli_io]") {
    BgkConfig c;
    c.kn = 0.05;
    c.f0 = 1.5;
    c.grid.n_cells = 64;
    c.vgrid.n_v1 = 48;
    c.vgrid.v_max = 7.5;
    c.t_end = 33.25;
    c.snapshot_times = {1.0, 10.0, 33.25};
    c.checkpoint_interval = 5.0;
    c.checkpoint_path = "ck.bin";
    c.entropy_check = true;

    std::string text = render_config(c);
    ConfigMap m = ConfigMap::parse_string(text);
    BgkConfig back = bgk_config_from(m);
    CHECK(back == c);
}

TEST_CASE("particle and continuum configs round trip", "[cli_io]") {
    DsmcConfig d;
    d.kn = 0.2;
    d.particles_per_cell = 77;
    d.rng_seed = 991;
    d.time_avg_window = 12.5;
    ConfigMap md = ConfigMap::parse_string(render_config(d));
    CHECK(dsmc_config_from(md) == d);

    CnsConfig n;
    n.delta = 0.5;
    n.g0 = 2.0;
    n.dt = 0.002;
    ConfigMap mn = ConfigMap::parse_string(render_config(n));
    CHECK(cns_config_from(mn) == n);
}

TEST_CASE("spectral config with a random force round trips", "[cli_io]") {
    SteadyNsConfig s;
    s.nu = 0.8;
    s.N = 6;
    s.force = random_divfree_force(6, 2, 0.05, 17);
    ConfigMap ms = ConfigMap::parse_string(render_config(s));
    SteadyNsConfig back = steady_ns_config_from(ms);
    CHECK(back == s);
}

TEST_CASE("config errors carry key and line information", "[cli_io]") {
    CHECK_THROWS_WITH(
        [] {
            ConfigMap m = ConfigMap::parse_string("kn = 0.1\nbogus_key = 3\n", "test.cfg");
            return bgk_config_from(m);
        }(),
        Catch::Matchers::ContainsSubstring("bogus_key") &&
            Catch::Matchers::ContainsSubstring("2"));

    CHECK_THROWS_AS(ConfigMap::parse_string("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(ConfigMap::parse_string("a 1\n"), ConfigError);

    ConfigMap m = ConfigMap::parse_string("kn = not_a_number\n");
    CHECK_THROWS_AS(bgk_config_from(m), ConfigError);
}

TEST_CASE("csv writer and reader round trip including blank cells", "[cli_io]") {
    TempDir tmp("csv");
    std::string path = (tmp.path / "t.csv").string();
    {
        CsvWriter w(path, {"t", "value"});
        w.row({1.0, 0.1});
        w.row({2.0, std::nan("")});
        w.row_mixed({"3", ""});
        w.close();
    }
    CsvTable tab = read_csv(path);
    REQUIRE(tab.columns == std::vector<std::string>{"t", "value"});
    REQUIRE(tab.rows.size() == 3);
    CHECK(tab.column("t") == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(tab.column("value")[0] == 0.1);
    CHECK(std::isnan(tab.column("value")[1]));
    CHECK(std::isnan(tab.column("value")[2]));
    CHECK_THROWS_WITH(tab.column("missing"), Catch::Matchers::ContainsSubstring("missing"));
    CHECK(!tab.has_column("nope"));
}

TEST_CASE("run dirs never collide and manifests are recomputable", "[cli_io]") {
    TempDir tmp("runs");
    std::string d1 = make_run_dir(tmp.str(), "bgk-run");
    std::string d2 = make_run_dir(tmp.str(), "bgk-run");
    CHECK(d1 != d2);
    REQUIRE(fs::is_directory(d1));

    write_text_file(d1 + "/series.csv", "t,theta_av\n0,1\n");
    RunManifest man;
    man.subcommand = "bgk run";
    man.config_text = "kn = 0.1\n";
    man.start_time = iso_utc_now();
    man.end_time = iso_utc_now();
    man.outputs.push_back({"series.csv", sha256_file(d1 + "/series.csv")});
    man.notes.push_back("remap t=1 scale 1 -> 1.2");
    man.write(d1);

    REQUIRE(fs::exists(d1 + "/manifest.txt"));
    std::string text = read_text_file(d1 + "/manifest.txt");
    CHECK(text.find("bgk run") != std::string::npos);
    CHECK(text.find(sha256_hex("kn = 0.1\n")) != std::string::npos);
    CHECK(text.find(sha256_file(d1 + "/series.csv")) != std::string::npos);
    // atomic write leaves no droppings
    for (const auto& e : fs::directory_iterator(d1)) {
        CHECK(e.path().extension() != ".tmp");
    }
}

TEST_CASE("worker count comes from the environment, validated", "[cli_io]") {
    unsetenv("GASLAB_WORKERS");
    CHECK(env_worker_count() == 1);
    setenv("GASLAB_WORKERS", "4", 1);
    CHECK(env_worker_count() == 4);
    setenv("GASLAB_WORKERS", "zero", 1);
    CHECK_THROWS_AS(env_worker_count(), std::runtime_error);
    setenv("GASLAB_WORKERS", "0", 1);
    CHECK_THROWS_AS(env_worker_count(), std::runtime_error);
    unsetenv("GASLAB_WORKERS");
}

TEST_CASE("slope-fit command produces the expected exponents", "[cli_io]") {
    TempDir tmp("fit");
    std::string in = (tmp.path / "series.csv").string();
    {
        CsvWriter w(in, {"t", "theta_av", "u2_av"});
        for (int i = 0; i <= 400; ++i) {
            double t = std::pow(10.0, 3.0 * i / 400.0);
            w.row({t, std::pow(t, 0.7), 2.0 * std::pow(t, -0.3)});
        }
        w.close();
    }
    std::string out = (tmp.path / "slopes.csv").string();
    REQUIRE(cli_fit_slope(in, "theta_av", 0.25, 5.0, out) == kExitOk);
    CsvTable tab = read_csv(out);
    REQUIRE(tab.has_column("alpha"));
    REQUIRE(tab.has_column("beta"));
    REQUIRE(tab.has_column("beta_bar"));
    auto alpha = tab.column("alpha");
    auto beta = tab.column("beta");
    CHECK(alpha[alpha.size() / 2] == Catch::Approx(0.7).margin(1e-10));
    CHECK(beta[beta.size() / 2] == Catch::Approx(-0.3).margin(1e-10));

    CHECK_THROWS_WITH(cli_fit_slope(in, "nope", 0.25, 5.0, out),
                      Catch::Matchers::ContainsSubstring("nope"));
}

TEST_CASE("plot emission covers the standard figure set", "[cli_io]") {
    TempDir tmp("plots");
    std::string run = (tmp.path / "bgk-run-x").string();
    fs::create_directories(run);
    {
        CsvWriter w(run + "/series.csv", {"t", "theta_av", "u2_av", "entropy", "mass"});
        for (int i = 1; i <= 50; ++i)
            w.row({0.5 * i, 1.0 + 0.01 * i, 0.1, -2.0, 0.5});
        w.close();
    }
    {
        CsvWriter w(run + "/snapshot_0.csv", {"x1", "rho", "u1", "u2", "theta"});
        w.row({-0.2, 1.0, 0.0, 0.05, 1.1});
        w.row({0.2, 1.0, 0.0, -0.05, 1.1});
        w.close();
    }
    REQUIRE(cli_emit_plots(run) == kExitOk);
    int n_scripts = 0;
    for (const auto& e : fs::directory_iterator(run + "/plots")) {
        if (e.path().extension() == ".py") {
            ++n_scripts;
            std::string body = read_text_file(e.path().string());
            CHECK(body.find("matplotlib") != std::string::npos);
        }
    }
    CHECK(n_scripts >= 7);

    // aggregate series gain an error-bar figure
    {
        CsvWriter w(run + "/aggregate.csv",
                    {"t", "theta_av_mean", "theta_av_se", "u2_av_mean", "u2_av_se"});
        w.row({1.0, 1.1, 0.01, 0.1, 0.005});
        w.close();
    }
    REQUIRE(cli_emit_plots(run) == kExitOk);
    CHECK(fs::exists(run + "/plots/agg_theta_errorbars.py"));

    // an empty directory is a warning, not an error
    std::string empty = (tmp.path / "nothing").string();
    fs::create_directories(empty);
    CHECK(cli_emit_plots(empty) == kExitOk);

    // a series file without any u2-like column names the gap
    std::string broken = (tmp.path / "broken").string();
    fs::create_directories(broken);
    {
        CsvWriter w(broken + "/series.csv", {"t", "theta_av"});
        w.row({1.0, 1.0});
        w.close();
    }
    CHECK_THROWS_WITH(cli_emit_plots(broken), Catch::Matchers::ContainsSubstring("u2_av"));
}

TEST_CASE("moments-verify command writes its table and manifest", "[cli_io]") {
    TempDir tmp("mv");
    MomentsVerifyOptions opt;
    opt.out_root = tmp.str();
    REQUIRE(cli_moments_verify(opt) == kExitOk);

    fs::path run_dir;
    for (const auto& e : fs::directory_iterator(tmp.path))
        if (e.is_directory()) run_dir = e.path();
    REQUIRE(!run_dir.empty());
    CsvTable tab = read_csv((run_dir / "lemmas.csv").string());
    CHECK(tab.rows.size() == 9);
    REQUIRE(tab.has_column("passed"));
    for (double ok : tab.column("passed")) CHECK(ok == 1.0);
    CHECK(fs::exists(run_dir / "manifest.txt"));
    CHECK(fs::exists(run_dir / "config.txt"));
}
