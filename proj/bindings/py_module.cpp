// Python bindings for the solver core: instance IO and generation, the
// exact staged solver, the multistart heuristic, the enumeration reference,
// and solution inspection. Result objects are plain read-only views.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "scheloc/framework.hpp"
#include "scheloc/heuristics.hpp"
#include "scheloc/instance.hpp"
#include "scheloc/io.hpp"
#include "scheloc/oracle.hpp"
#include "scheloc/schedule.hpp"
#include "scheloc/solution.hpp"

namespace py = pybind11;
using namespace scheloc;

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Machine location-scheduling solvers (exact, relaxation-based, multistart)";

  py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);

  py::class_<Instance>(mod, "Instance")
      .def(py::init<>())
      .def_readwrite("name", &Instance::name)
      .def_readwrite("n", &Instance::n)
      .def_readwrite("m", &Instance::m)
      .def_readwrite("p", &Instance::p)
      .def_readwrite("scale", &Instance::scale)
      .def_readwrite("proc", &Instance::proc)
      .def_readwrite("release", &Instance::release)
      .def_readwrite("job_xy", &Instance::job_xy)
      .def_readwrite("loc_xy", &Instance::loc_xy)
      .def("rel", &Instance::rel, py::arg("job"), py::arg("loc"))
      .def("validate", &Instance::validate)
      .def("__repr__", [](const Instance& i) {
        std::ostringstream os;
        os << "Instance(name='" << i.name << "', n=" << i.n << ", m=" << i.m << ", p=" << i.p
           << ")";
        return os.str();
      });

  py::class_<ScheduledJob>(mod, "ScheduledJob")
      .def_readonly("job", &ScheduledJob::job)
      .def_readonly("start", &ScheduledJob::start)
      .def_readonly("completion", &ScheduledJob::completion)
      .def("__repr__", [](const ScheduledJob& s) {
        std::ostringstream os;
        os << "ScheduledJob(job=" << s.job << ", start=" << s.start << ", completion="
           << s.completion << ")";
        return os.str();
      });

  py::class_<MachineSchedule>(mod, "MachineSchedule")
      .def_readonly("location", &MachineSchedule::location)
      .def_readonly("jobs", &MachineSchedule::jobs)
      .def("completion", &MachineSchedule::completion);

  py::class_<Solution>(mod, "Solution")
      .def_readonly("machines", &Solution::machines)
      .def_readonly("makespan", &Solution::makespan)
      .def("chosen_locations", &Solution::chosen_locations)
      .def("__repr__", [](const Solution& s) {
        std::ostringstream os;
        os << "Solution(makespan=" << s.makespan << ", machines=" << s.machines.size() << ")";
        return os.str();
      });

  py::class_<Bounds>(mod, "Bounds")
      .def_readonly("lb", &Bounds::lb)
      .def_readonly("ub", &Bounds::ub)
      .def_readonly("optimal", &Bounds::optimal)
      .def("__repr__", [](const Bounds& b) {
        std::ostringstream os;
        os << "Bounds(lb=" << b.lb << ", ub=" << b.ub << ", optimal=" << (b.optimal ? "True" : "False")
           << ")";
        return os.str();
      });

  py::class_<StageReport>(mod, "StageReport")
      .def_readonly("stage", &StageReport::stage)
      .def_readonly("ran", &StageReport::ran)
      .def_readonly("seconds", &StageReport::seconds)
      .def_readonly("lb", &StageReport::lb)
      .def_readonly("ub", &StageReport::ub)
      .def_readonly("note", &StageReport::note);

  py::class_<FrameworkResult>(mod, "FrameworkResult")
      .def_readonly("best", &FrameworkResult::best)
      .def_readonly("bounds", &FrameworkResult::bounds)
      .def_readonly("stages", &FrameworkResult::stages)
      .def_readonly("closed_by", &FrameworkResult::closed_by);

  py::class_<IlsResult>(mod, "IlsResult")
      .def_readonly("best", &IlsResult::best)
      .def_readonly("best_start", &IlsResult::best_start)
      .def_readonly("start_makespan", &IlsResult::start_makespan);

  py::class_<OracleResult>(mod, "OracleResult")
      .def_readonly("makespan", &OracleResult::makespan)
      .def_readonly("solution", &OracleResult::solution)
      .def_readonly("work", &OracleResult::work);

  mod.def("read_instance", [](const std::string& path) { return read_instance(path); },
          py::arg("path"), "Read an instance in the native text format.");
  mod.def("read_instance_literature", &read_instance_literature, py::arg("path"),
          "Read an instance in the published benchmark format (fractional releases are scaled "
          "to integers; see Instance.scale).");
  mod.def("write_instance",
          [](const Instance& inst, const std::string& path) { write_instance(inst, path); },
          py::arg("instance"), py::arg("path"), "Write an instance in the native text format.");
  mod.def(
      "generate_instance",
      [](int n, int m, int p, std::uint64_t seed) {
        GeneratorConfig cfg;
        cfg.n = n;
        cfg.m = m;
        cfg.p = p;
        cfg.seed = seed;
        return generate_instance(cfg);
      },
      py::arg("n"), py::arg("m"), py::arg("p"), py::arg("seed") = 0,
      "Random planar instance: points on a square, releases = floored distances.");

  mod.def("evaluate", &evaluate, py::arg("solution"), py::arg("instance"),
          "Re-derive the makespan of a solution from scratch; throws if the solution is not a "
          "feasible schedule of the instance.");
  mod.def("initial_lower_bound", &initial_lower_bound, py::arg("instance"),
          "Processing-load lower bound: ceil(total work / machines) + smallest release.");

  mod.def(
      "solve_exact",
      [](const Instance& inst, double max_work) {
        OracleOptions opt;
        opt.max_work = max_work;
        return solve_exact(inst, opt);
      },
      py::arg("instance"), py::arg("max_work") = 1e8,
      "Enumerate every placement and assignment (reference solver; throws when the instance "
      "exceeds max_work enumerations).");

  mod.def(
      "run_ils",
      [](const Instance& inst, int n_iter, int n_ils, std::uint64_t seed) {
        IlsOptions opt;
        opt.n_iter = n_iter;
        opt.n_ils = n_ils;
        opt.seed = seed;
        return run_ils(inst, opt);
      },
      py::arg("instance"), py::arg("n_iter") = 10, py::arg("n_ils") = 100, py::arg("seed") = 0,
      "Multistart iterated local search over swap and relocation neighborhoods.");

  mod.def(
      "run_framework",
      [](const Instance& inst, std::uint64_t seed, double stage_time_limit_s,
         double heuristic_time_limit_s, double cg_time_limit_s) {
        FrameworkOptions opt;
        opt.seed = seed;
        opt.stage_time_limit_s = stage_time_limit_s;
        opt.heuristic_time_limit_s = heuristic_time_limit_s;
        opt.cg_time_limit_s = cg_time_limit_s;
        py::gil_scoped_release unlock;
        return run_framework(inst, opt);
      },
      py::arg("instance"), py::arg("seed") = 0, py::arg("stage_time_limit_s") = 300.0,
      py::arg("heuristic_time_limit_s") = 120.0, py::arg("cg_time_limit_s") = 300.0,
      "Staged exact solver: load bound, multistart search, column generation, restricted "
      "integer searches, full model. Returns bounds, the best solution, and one report per "
      "stage.");

  mod.attr("__version__") = "0.1.0";
}
