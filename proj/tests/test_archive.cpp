#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "mtmb/archive.hpp"

using namespace mtmb;

namespace {

Elite make_elite(std::vector<double> command, BehaviorKey behavior, double fitness) {
    return Elite{std::move(command), std::move(behavior), fitness};
}

} // namespace

TEST_CASE("insert adds, replaces on strict improvement, rejects ties") {
    Archive archive(3);
    CHECK(archive.insert(1, make_elite({0.1, 0.2}, {0, 0}, 5.0)) == InsertOutcome::Added);
    CHECK(archive.total_elites() == 1);

    // Equal fitness keeps the incumbent.
    CHECK(archive.insert(1, make_elite({0.9, 0.9}, {0, 0}, 5.0)) == InsertOutcome::Rejected);
    CHECK(archive.cells(1).at({0, 0}).command[0] == 0.1);

    CHECK(archive.insert(1, make_elite({0.3, 0.4}, {0, 0}, 5.5)) == InsertOutcome::Replaced);
    CHECK(archive.cells(1).at({0, 0}).fitness == 5.5);
    CHECK(archive.total_elites() == 1); // replacement is not growth

    CHECK(archive.insert(1, make_elite({0.5, 0.5}, {2, 7}, 1.0)) == InsertOutcome::Added);
    CHECK(archive.total_elites() == 2);
    CHECK(archive.elite_count(1) == 2);
    CHECK(archive.elite_count(0) == 0);
}

TEST_CASE("insert validates the task index and fitness") {
    Archive archive(2);
    CHECK_THROWS_AS(archive.insert(2, make_elite({0.0}, {0}, 1.0)), std::out_of_range);
    CHECK_THROWS_AS(archive.insert(0, make_elite({0.0}, {0}, std::nan(""))),
                    std::invalid_argument);
}

TEST_CASE("solution counting applies the f_max tolerance") {
    Archive archive(2);
    const double f_max = 10.0;
    archive.insert(0, make_elite({0.1}, {0}, f_max));
    archive.insert(0, make_elite({0.2}, {1}, f_max - 0.5e-9)); // within eps
    archive.insert(0, make_elite({0.3}, {2}, f_max - 1.0));    // an elite, not a solution
    archive.insert(1, make_elite({0.4}, {0}, 2.0));

    CHECK(archive.solution_count(0, f_max, kSolveEps) == 2);
    CHECK(archive.solution_count(1, f_max, kSolveEps) == 0);
    CHECK(archive.solved_task_count(f_max, kSolveEps) == 1);

    const std::vector<Elite> solutions = archive.solutions_of_task(0, f_max, kSolveEps);
    REQUIRE(solutions.size() == 2);
    CHECK(solutions[0].behavior == BehaviorKey{0}); // ascending key order
    CHECK(solutions[1].behavior == BehaviorKey{1});
}

TEST_CASE("stored fitness at a key never decreases over random insertions") {
    Archive archive(4);
    RandomStream rng(77);
    std::map<std::pair<TaskId, BehaviorKey>, double> best;
    for (int i = 0; i < 20'000; ++i) {
        const TaskId task = rng.index(4);
        BehaviorKey key{static_cast<int>(rng.index(5)), static_cast<int>(rng.index(5))};
        const double fitness = rng.uniform(0.0, 10.0);
        archive.insert(task, make_elite({rng.uniform01()}, key, fitness));

        auto [it, fresh] = best.emplace(std::make_pair(task, key), fitness);
        if (!fresh && fitness > it->second)
            it->second = fitness;
        CHECK(archive.cells(task).at(key).fitness == it->second);
    }
    std::size_t total = 0;
    for (TaskId t = 0; t < 4; ++t)
        total += archive.elite_count(t);
    CHECK(total == best.size());
    CHECK(total == archive.total_elites());
}

TEST_CASE("random_elite_of_random_task consumes exactly two draws, or none when empty") {
    Archive archive(5);
    RandomStream rng(3);
    CHECK(!archive.random_elite_of_random_task(rng).has_value());
    CHECK(rng.steps() == 0);

    archive.insert(2, make_elite({0.5}, {1}, 1.0));
    const auto picked = archive.random_elite_of_random_task(rng);
    REQUIRE(picked.has_value());
    CHECK(picked->first == 2);
    CHECK(rng.steps() == 2);
}

TEST_CASE("random_elite_of_task consumes one draw, or none when the task is empty") {
    Archive archive(2);
    RandomStream rng(4);
    CHECK(!archive.random_elite_of_task(0, rng).has_value());
    CHECK(rng.steps() == 0);
    archive.insert(0, make_elite({0.5}, {3}, 1.0));
    CHECK(archive.random_elite_of_task(0, rng).has_value());
    CHECK(rng.steps() == 1);
}

TEST_CASE("selection is uniform over nonempty tasks, then over elites") {
    Archive archive(10);
    // Two nonempty tasks with different elite counts; task-first selection
    // still picks each task half the time.
    archive.insert(3, make_elite({0.0}, {0}, 1.0));
    archive.insert(7, make_elite({0.0}, {0}, 1.0));
    archive.insert(7, make_elite({0.0}, {1}, 1.0));
    archive.insert(7, make_elite({0.0}, {2}, 1.0));

    RandomStream rng(123);
    int task3 = 0;
    const int trials = 10'000;
    for (int i = 0; i < trials; ++i) {
        const auto picked = archive.random_elite_of_random_task(rng);
        REQUIRE(picked.has_value());
        if (picked->first == 3)
            ++task3;
    }
    CHECK(std::abs(task3 / static_cast<double>(trials) - 0.5) < 0.02);
}

TEST_CASE("evaluation accounting is independent of insertion") {
    Archive archive(1);
    archive.insert(0, make_elite({0.0}, {0}, 1.0));
    CHECK(archive.eval_count() == 0);
    archive.note_evaluation();
    archive.note_evaluation();
    CHECK(archive.eval_count() == 2);
}

TEST_CASE("dump is sorted, 17-digit exact, and round-trips") {
    Archive archive(3);
    archive.insert(2, make_elite({0.1234567890123456, 1.0 / 3.0}, {1, 0}, 9.999999999999998));
    archive.insert(0, make_elite({0.5, 0.25}, {0, 1}, 1.0));
    archive.insert(2, make_elite({1e-17, 1.0}, {0, 5}, 2.5));

    std::ostringstream out;
    dump_archive(archive, out);
    const std::string text = out.str();

    std::istringstream in(text);
    const std::vector<DumpRecord> records = load_archive_dump(in);
    REQUIRE(records.size() == 3);
    CHECK(records[0].task == 0);
    CHECK(records[1].task == 2);
    CHECK(records[1].behavior == BehaviorKey{0, 5}); // key order within task
    CHECK(records[2].behavior == BehaviorKey{1, 0});
    CHECK(records[1].command[0] == 1e-17); // bit-exact float transport
    CHECK(records[2].command[0] == 0.1234567890123456);
    CHECK(records[2].command[1] == 1.0 / 3.0);
    CHECK(records[2].fitness == 9.999999999999998);

    // Dumping an archive rebuilt from the records reproduces the bytes.
    Archive rebuilt(3);
    for (const DumpRecord& rec : records)
        rebuilt.insert(rec.task, make_elite(rec.command, rec.behavior, rec.fitness));
    std::ostringstream out2;
    dump_archive(rebuilt, out2);
    CHECK(out2.str() == text);
}

TEST_CASE("cells rejects an out-of-range task") {
    Archive archive(1);
    CHECK_THROWS_AS(archive.cells(1), std::out_of_range);
}
