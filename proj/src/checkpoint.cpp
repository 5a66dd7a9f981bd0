#include "gaslab/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gaslab {

namespace {
constexpr char kMagic[4] = {'G', 'K', 'C', 'K'};
constexpr uint32_t kCkptVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is, const char* what) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw std::runtime_error(std::string("checkpoint: truncated at ") + what);
    return v;
}
}  // namespace

void save_checkpoint(const std::string& path, const BgkSolver& solver) {
    const auto& st = solver.state();
    const auto& vg = solver.vgrid();
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("checkpoint: cannot open " + tmp);
        os.write(kMagic, 4);
        put<uint32_t>(os, kCkptVersion);
        put<uint64_t>(os, static_cast<uint64_t>(st.f.n_x));
        put<uint64_t>(os, static_cast<uint64_t>(st.f.n_v1));
        put<uint64_t>(os, static_cast<uint64_t>(st.f.n_v2));
        put<double>(os, vg.v_max);
        put<double>(os, vg.scale);
        put<double>(os, st.time);
        put<double>(os, solver.config().kn);
        put<double>(os, solver.config().f0);
        put<uint64_t>(os, static_cast<uint64_t>(st.step_count));
        os.write(reinterpret_cast<const char*>(st.f.G.data()),
                 static_cast<std::streamsize>(st.f.G.size() * sizeof(double)));
        os.write(reinterpret_cast<const char*>(st.f.H.data()),
                 static_cast<std::streamsize>(st.f.H.size() * sizeof(double)));
        os.close();
        if (!os) throw std::runtime_error("checkpoint: write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void load_checkpoint(const std::string& path, BgkSolver& solver) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    uint32_t version = get<uint32_t>(is, "version");
    if (version != kCkptVersion)
        throw std::runtime_error("checkpoint: unsupported version in " + path);
    uint64_t nx = get<uint64_t>(is, "n_x");
    uint64_t nv1 = get<uint64_t>(is, "n_v1");
    uint64_t nv2 = get<uint64_t>(is, "n_v2");
    double v_max = get<double>(is, "v_max");
    double scale = get<double>(is, "scale");
    double time = get<double>(is, "time");
    double kn = get<double>(is, "kn");
    double f0 = get<double>(is, "f0");
    uint64_t step = get<uint64_t>(is, "step_count");

    auto& st = solver.mutable_state();
    const auto& cfg = solver.config();
    if (nx != static_cast<uint64_t>(st.f.n_x) || nv1 != static_cast<uint64_t>(st.f.n_v1) ||
        nv2 != static_cast<uint64_t>(st.f.n_v2))
        throw std::runtime_error("checkpoint: grid dimensions do not match the config");
    if (v_max != cfg.vgrid.v_max || kn != cfg.kn || f0 != cfg.f0)
        throw std::runtime_error("checkpoint: kn/f0/v_max do not match the config");

    is.read(reinterpret_cast<char*>(st.f.G.data()),
            static_cast<std::streamsize>(st.f.G.size() * sizeof(double)));
    is.read(reinterpret_cast<char*>(st.f.H.data()),
            static_cast<std::streamsize>(st.f.H.size() * sizeof(double)));
    if (!is) throw std::runtime_error("checkpoint: truncated data in " + path);

    st.time = time;
    st.step_count = static_cast<long>(step);
    st.scale_history.emplace_back(time, scale);
    solver.set_scale(scale);
}

}  // namespace gaslab
