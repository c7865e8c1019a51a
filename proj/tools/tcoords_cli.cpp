/**
 * tcoords: circle- and torus-valued coordinates for point clouds.
 *
 * Subcommands mirror the pipeline stages: `synth` writes the bundled
 * synthetic datasets, `persist` computes the landmark Vietoris-Rips barcode,
 * `coords` turns selected degree-1 classes into (sparse) circular or toroidal
 * coordinates, `slidingwindow` embeds a time-series matrix, and `correlate`
 * scores coordinate files with the Dirichlet correlation matrix.
 *
 * Exit codes: 0 success, 2 validation error, 3 numerical failure, 4 I/O.
 */

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tcoords/errors.hpp"
#include "tcoords/pipeline.hpp"

namespace {

double parse_auto(const std::string& value, const char* what) {
    if (value == "auto") return -1.0;
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw tcoords::validation_error(std::string(what) + " must be a number or 'auto'");
    }
}

void write_ground_truth(const std::vector<tcoords::CircleMap>& truth, const std::string& path) {
    if (truth.empty()) return;
    Eigen::MatrixXd m(truth[0].size(), truth.size());
    for (std::size_t c = 0; c < truth.size(); ++c) {
        for (int r = 0; r < truth[c].size(); ++r) m(r, static_cast<int>(c)) = truth[c].values[r];
    }
    tcoords::write_csv_matrix(m, path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle- and torus-valued coordinates from persistent cohomology"};
    app.require_subcommand(1);

    tcoords::PipelineConfig config;
    std::string epsilon_str = "auto";
    std::string max_scale_str = "auto";
    std::string bandwidth_str = "auto";
    std::string mode = "toroidal";
    std::string barcode_path;
    std::string coords_path;

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
    std::string synth_kind;
    int synth_n = 2000;
    synth->add_option("kind", synth_kind, "torus | genus2 | neuro")->required();
    synth->add_option("--n", synth_n, "number of points (torus, genus2)");
    synth->add_option("--seed", config.seed, "RNG seed");
    synth->add_option("--out", config.out_dir, "output directory")->required();

    // persist
    auto* persist = app.add_subcommand("persist", "landmark VR persistent cohomology");
    persist->add_option("--input", config.input_path, "point cloud CSV")->required();
    persist->add_option("--landmarks", config.n_landmarks, "number of maxmin landmarks");
    persist->add_option("--prime", config.prime, "coefficient prime (default 41)");
    persist->add_option("--max-scale", max_scale_str, "filtration cutoff or 'auto'");
    persist->add_option("--seed", config.seed, "seed (negative: start maxmin at index 0)");
    persist->add_option("--out", config.out_dir, "output directory")->required();

    // coords
    auto* coords = app.add_subcommand("coords", "coordinates from selected classes");
    coords->add_option("--input", config.input_path, "point cloud CSV")->required();
    coords->add_option("--barcode", barcode_path, "barcode.json from 'persist'")->required();
    coords->add_option("--classes", config.class_indices, "degree-1 interval indices")
        ->required()
        ->delimiter(',');
    coords->add_option("--epsilon", epsilon_str, "cover scale or 'auto'");
    coords->add_option("--inner-product", config.inner_product, "dsmv | dirichlet");
    coords->add_option("--knn", config.knn, "k for neighbor graphs (default 15)");
    coords->add_option("--bandwidth", bandwidth_str, "Gaussian bandwidth or 'auto'");
    coords->add_option("--mode", mode, "circular | toroidal");
    coords->add_flag("--sparse", config.sparse, "sparse integration over all data points");
    coords->add_option("--seed", config.seed, "integration / sampling seed");
    coords->add_flag("--verbose", config.verbose, "print solver details");
    coords->add_option("--out", config.out_dir, "output directory")->required();

    // slidingwindow
    auto* sw = app.add_subcommand("slidingwindow", "delay embedding of a CSV matrix");
    int window_dim = 5, delay = 4;
    bool columns_are_time = false;
    sw->add_option("--input", config.input_path, "time series CSV")->required();
    sw->add_option("--window-dim", window_dim, "d: window has d+1 samples (default 5)");
    sw->add_option("--delay", delay, "tau: sample stride (default 4)");
    sw->add_flag("--columns-are-time", columns_are_time, "columns index time instead of rows");
    sw->add_option("--out", config.out_dir, "output directory")->required();

    // correlate
    auto* corr = app.add_subcommand("correlate", "Dirichlet correlation of coordinates");
    corr->add_option("--input", config.input_path, "point cloud CSV")->required();
    corr->add_option("--coords", coords_path, "coordinates CSV (one column per map)")->required();
    corr->add_option("--knn", config.knn, "k for the neighbor graph");
    corr->add_option("--bandwidth", bandwidth_str, "Gaussian bandwidth or 'auto'");
    corr->add_option("--out", config.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        config.epsilon = parse_auto(epsilon_str, "--epsilon");
        config.max_scale = parse_auto(max_scale_str, "--max-scale");
        config.bandwidth = parse_auto(bandwidth_str, "--bandwidth");
        if (mode == "circular") {
            config.toroidal = false;
        } else if (mode == "toroidal") {
            config.toroidal = true;
        } else {
            throw tcoords::validation_error("--mode must be 'circular' or 'toroidal'");
        }

        if (synth->parsed()) {
            std::filesystem::create_directories(config.out_dir);
            if (synth_kind == "torus") {
                const auto sample = tcoords::synth_torus(synth_n, config.seed);
                tcoords::write_point_cloud_csv(sample.points, config.out_dir + "/points.csv");
                write_ground_truth(sample.ground_truth, config.out_dir + "/ground_truth.csv");
            } else if (synth_kind == "genus2") {
                const auto cloud = tcoords::synth_genus2(synth_n, config.seed);
                tcoords::write_point_cloud_csv(cloud, config.out_dir + "/points.csv");
            } else if (synth_kind == "neuro") {
                const auto sample = tcoords::synth_neuro(config.seed);
                tcoords::write_point_cloud_csv(sample.points, config.out_dir + "/points.csv");
                write_ground_truth(sample.ground_truth, config.out_dir + "/ground_truth.csv");
            } else {
                throw tcoords::validation_error("synth kind must be torus, genus2, or neuro");
            }
            std::cout << "wrote " << config.out_dir << "/points.csv\n";
        } else if (persist->parsed()) {
            tcoords::run_persist(config);
        } else if (coords->parsed()) {
            const auto persisted = tcoords::load_persist(config, barcode_path);
            tcoords::run_coords(config, persisted);
        } else if (sw->parsed()) {
            tcoords::run_slidingwindow(config, window_dim, delay, !columns_are_time);
        } else if (corr->parsed()) {
            tcoords::run_correlate(config, coords_path);
        }
    } catch (const tcoords::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const tcoords::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const tcoords::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
