#include "tcoords/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tcoords/errors.hpp"
#include "tcoords/harmonic.hpp"
#include "tcoords/lattice.hpp"

namespace tcoords {

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write '" + path + "'");
    out << text;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    write_text(path, j.dump(2) + "\n");
}

nlohmann::ordered_json config_to_json(const PipelineConfig& c) {
    nlohmann::ordered_json j;
    j["input"] = c.input_path;
    j["landmarks"] = c.n_landmarks;
    j["epsilon"] = c.epsilon;
    j["max_scale"] = c.max_scale;
    j["prime"] = c.prime;
    j["classes"] = c.class_indices;
    j["inner_product"] = c.inner_product;
    j["knn"] = c.knn;
    j["bandwidth"] = c.bandwidth;
    j["mode"] = c.toroidal ? "toroidal" : "circular";
    j["sparse"] = c.sparse;
    j["seed"] = c.seed;
    return j;
}

double landmark_diameter(const PointCloud& landmarks) {
    double diam = 0.0;
    for (int i = 0; i < landmarks.size(); ++i) {
        for (int j = i + 1; j < landmarks.size(); ++j) {
            diam = std::max(diam, landmarks.distance(i, j));
        }
    }
    return diam;
}

} // namespace

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void validate_config(const PipelineConfig& config) {
    if (config.n_landmarks < 1) throw validation_error("landmarks must be >= 1");
    if (!is_prime(config.prime) || config.prime <= 2 || config.prime >= (1 << 15)) {
        throw validation_error("prime must be a prime in (2, 2^15)");
    }
    if (config.inner_product != "dsmv" && config.inner_product != "dirichlet") {
        throw validation_error("inner product must be 'dsmv' or 'dirichlet'");
    }
    if (config.knn < 1) throw validation_error("knn must be >= 1");
    for (int idx : config.class_indices) {
        if (idx < 0) throw validation_error("class indices must be nonnegative");
    }
}

PersistResult run_persist(const PipelineConfig& config) {
    validate_config(config);
    PersistResult out;
    out.cloud = read_point_cloud_csv(config.input_path);
    if (config.n_landmarks > out.cloud.size()) {
        throw validation_error("landmarks exceed the number of data points");
    }
    auto [landmarks, cover_radius] = maxmin_sample(out.cloud, config.n_landmarks, config.seed);
    out.landmark_indices = std::move(landmarks);
    out.cover_radius = cover_radius;

    const PointCloud landmark_cloud = out.cloud.select(out.landmark_indices);
    out.max_scale = config.max_scale > 0.0 ? config.max_scale : landmark_diameter(landmark_cloud);
    out.complex = vietoris_rips(landmark_cloud, out.max_scale);
    out.barcode = persistent_cohomology(out.complex, config.prime);

    std::cout << "persist: " << out.cloud.size() << " points, " << out.landmark_indices.size()
              << " landmarks, cover radius " << out.cover_radius << ", max scale "
              << out.max_scale << "\n"
              << out.complex.edge_count() << " edges, " << out.complex.triangle_count()
              << " triangles, " << out.barcode.intervals.size() << " intervals\n"
              << barcode_table(out.barcode, 10);

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        nlohmann::ordered_json j = barcode_to_json(out.barcode, out.complex);
        j["config"] = config_to_json(config);
        j["landmark_indices"] = out.landmark_indices;
        j["cover_radius"] = out.cover_radius;
        j["max_scale"] = out.max_scale;
        j["timestamp"] = now_iso8601();
        write_json(config.out_dir + "/barcode.json", j);
        write_text(config.out_dir + "/diagram.txt", barcode_table(out.barcode));
    }
    return out;
}

PersistResult load_persist(const PipelineConfig& config, const std::string& barcode_path) {
    std::ifstream in(barcode_path);
    if (!in) throw io_error("cannot open '" + barcode_path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw io_error(barcode_path + ": " + e.what());
    }
    PersistResult out;
    out.cloud = read_point_cloud_csv(config.input_path);
    out.landmark_indices = j.at("landmark_indices").get<std::vector<int>>();
    out.cover_radius = j.at("cover_radius").get<double>();
    out.max_scale = j.at("max_scale").get<double>();
    out.complex = vietoris_rips(out.cloud.select(out.landmark_indices), out.max_scale);
    out.barcode = barcode_from_json(j, out.complex);
    return out;
}

CoordsResult run_coords(const PipelineConfig& config, const PersistResult& persist) {
    validate_config(config);
    if (config.class_indices.empty()) {
        throw validation_error("no classes selected; pass --classes");
    }

    CoordsResult out;
    out.epsilon = config.epsilon > 0.0 ? config.epsilon : 2.05 * persist.cover_radius;
    if (out.epsilon > persist.max_scale) {
        throw validation_error("epsilon " + std::to_string(out.epsilon) +
                               " exceeds the filtration max scale " +
                               std::to_string(persist.max_scale) +
                               "; re-run persist with a larger max scale");
    }

    auto selection = select_classes(persist.barcode, persist.complex, out.epsilon,
                                    config.class_indices);
    out.complex_at_epsilon = std::move(selection.complex_at_epsilon);
    const FiltrationComplex& K = out.complex_at_epsilon;
    const PointCloud landmark_cloud = persist.cloud.select(persist.landmark_indices);

    for (const auto& cls : selection.classes) {
        out.lifts.push_back(lift_to_integer(cls, selection.prime, K));
    }

    // Cover and neighbor graph: the cover whenever sparse output or the
    // estimated inner product needs one, the graph for the estimated form
    // and for the correlation diagnostics.
    std::optional<CoverData> cover;
    if (config.sparse || config.inner_product == "dirichlet") {
        cover = partition_of_unity(persist.cloud, landmark_cloud, out.epsilon);
        cover->landmark_indices = persist.landmark_indices;
    }
    // The estimated form needs a graph over the data cloud; the correlation
    // diagnostics need one over whichever points carry the maps.
    std::optional<NeighborGraph> data_graph, map_graph;
    const auto graph_on_data = [&]() -> const NeighborGraph& {
        if (!data_graph) {
            data_graph = neighbor_graph(persist.cloud, config.knn,
                                        config.bandwidth > 0.0 ? config.bandwidth : 0.0);
        }
        return *data_graph;
    };
    const auto graph_for_maps = [&]() -> const NeighborGraph& {
        if (config.sparse) return graph_on_data();
        if (!map_graph) {
            map_graph = neighbor_graph(landmark_cloud, config.knn,
                                       config.bandwidth > 0.0 ? config.bandwidth : 0.0);
        }
        return *map_graph;
    };

    InnerProductForm form = InnerProductForm::make_dsmv(K.edge_count());
    if (config.inner_product == "dirichlet") {
        form = estimated_dirichlet_form(*cover, graph_on_data(), K);
    }

    const auto seed = static_cast<std::uint64_t>(config.seed);
    for (const auto& lift : out.lifts) {
        const HarmonicResult h = harmonic_representative(lift, form, K);
        if (config.verbose) {
            std::cout << "harmonic residual norm: " << h.residual_norm << "\n";
        }
        out.harmonics.push_back(h.theta);
    }

    const CoverData* cover_ptr = config.sparse ? &*cover : nullptr;
    const auto integrate_one = [&](const CocycleR& theta) {
        return config.sparse ? sparse_integrate(theta, *cover, K, seed)
                             : integrate(theta, K, seed);
    };

    if (!config.toroidal) {
        out.torus.transform = IntMatrix::Identity(static_cast<int>(out.harmonics.size()),
                                                  static_cast<int>(out.harmonics.size()));
        out.torus.provenance = config.sparse ? "circular/sparse" : "circular/dense";
        for (const auto& eta : out.harmonics) out.torus.maps.push_back(integrate_one(eta));
        for (const auto& eta : out.harmonics) {
            out.input_sq_length += form.evaluate(eta, eta);
        }
        out.output_sq_length = out.input_sq_length;
    } else {
        LowEnergyResult low = low_energy_representatives(out.harmonics, form);
        out.input_sq_length = low.input_sq_length;
        out.output_sq_length = low.output_sq_length;
        out.torus.transform = low.transform;
        out.torus.provenance = config.sparse ? "toroidal/sparse" : "toroidal/dense";
        for (const auto& theta : low.thetas) out.torus.maps.push_back(integrate_one(theta));

        // Per-class circular maps and both correlation matrices, the
        // comparison the toroidal run is judged by.
        TorusMap circ;
        circ.transform = IntMatrix::Identity(low.transform.rows(), low.transform.cols());
        circ.provenance = config.sparse ? "circular/sparse" : "circular/dense";
        for (const auto& eta : out.harmonics) circ.maps.push_back(integrate_one(eta));
        const NeighborGraph& graph = graph_for_maps();
        out.d_scc = correlation_matrix(circ.maps, graph);
        out.d_stc = correlation_matrix(out.torus.maps, graph);
        out.circular = std::move(circ);
    }

    std::cout << "coords: epsilon " << out.epsilon << ", " << out.torus.k() << " classes, "
              << (config.sparse ? "sparse" : "dense") << " "
              << (config.toroidal ? "toroidal" : "circular") << " mode\n"
              << "energy: input " << out.input_sq_length << ", output " << out.output_sq_length
              << "\n";
    if (out.d_scc) {
        std::cout << "D_SCC:\n" << correlation_table(*out.d_scc)
                  << "D_STC:\n" << correlation_table(*out.d_stc);
    }

    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        write_torus_map_csv(out.torus, config.out_dir + "/coords.csv");
        nlohmann::ordered_json j = torus_map_to_json(out.torus, cover_ptr, out.epsilon);
        if (!config.sparse) j["landmarks"] = persist.landmark_indices;
        j["config"] = config_to_json(config);
        j["energy"] = {{"input", out.input_sq_length}, {"output", out.output_sq_length}};
        j["timestamp"] = now_iso8601();
        write_json(config.out_dir + "/coords.json", j);
        if (out.circular) {
            write_torus_map_csv(*out.circular, config.out_dir + "/circular_coords.csv");
            write_json(config.out_dir + "/dscc.json", correlation_to_json(*out.d_scc));
            write_json(config.out_dir + "/dstc.json", correlation_to_json(*out.d_stc));
            write_text(config.out_dir + "/dscc.txt", correlation_table(*out.d_scc));
            write_text(config.out_dir + "/dstc.txt", correlation_table(*out.d_stc));
        }
        if (config.inner_product == "dirichlet") {
            write_json(config.out_dir + "/dirichlet_form.json", form.triples_to_json());
        }
    }
    return out;
}

PointCloud run_slidingwindow(const PipelineConfig& config, int window_dim, int delay,
                             bool rows_are_time) {
    const TimeSeries ts = ingest_matrix(config.input_path, rows_are_time);
    PointCloud cloud = sliding_window(ts, window_dim, delay);
    std::cout << "slidingwindow: " << ts.length() << " samples x " << ts.channels()
              << " channels -> " << cloud.size() << " points in R^" << cloud.dimension() << "\n";
    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        write_point_cloud_csv(cloud, config.out_dir + "/window.csv");
    }
    return cloud;
}

CorrelationMatrix run_correlate(const PipelineConfig& config, const std::string& coords_path) {
    const PointCloud data = read_point_cloud_csv(config.input_path);
    const Eigen::MatrixXd coords = read_csv_matrix(coords_path);
    if (coords.rows() != data.points.rows()) {
        throw validation_error("coordinate rows do not match data points");
    }
    std::vector<CircleMap> maps(coords.cols());
    for (int c = 0; c < coords.cols(); ++c) {
        maps[c].values.resize(coords.rows());
        for (int r = 0; r < coords.rows(); ++r) maps[c].values[r] = coords(r, c);
    }
    const NeighborGraph graph =
        neighbor_graph(data, config.knn, config.bandwidth > 0.0 ? config.bandwidth : 0.0);
    CorrelationMatrix m = correlation_matrix(maps, graph);
    std::cout << correlation_table(m);
    if (!config.out_dir.empty()) {
        std::filesystem::create_directories(config.out_dir);
        write_json(config.out_dir + "/correlation.json", correlation_to_json(m));
        write_text(config.out_dir + "/correlation.txt", correlation_table(m));
    }
    return m;
}

} // namespace tcoords
