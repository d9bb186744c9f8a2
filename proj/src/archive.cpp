#include "mtmb/archive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace mtmb {

void Archive::check_task(TaskId task) const {
    if (task >= per_task_.size())
        throw std::out_of_range("Archive: task index " + std::to_string(task) +
                                " out of range [0, " + std::to_string(per_task_.size()) + ")");
}

InsertOutcome Archive::insert(TaskId task, Elite elite) {
    check_task(task);
    if (!std::isfinite(elite.fitness))
        throw std::invalid_argument("Archive::insert: fitness must be finite");

    CellMap& cells = per_task_[task];
    auto it = cells.find(elite.behavior);
    if (it == cells.end()) {
        if (cells.empty()) {
            auto pos = std::lower_bound(nonempty_tasks_.begin(), nonempty_tasks_.end(), task);
            nonempty_tasks_.insert(pos, task);
        }
        BehaviorKey key = elite.behavior;
        cells.emplace(std::move(key), std::move(elite));
        ++total_elites_;
        return InsertOutcome::Added;
    }
    if (elite.fitness > it->second.fitness) {
        it->second = std::move(elite);
        return InsertOutcome::Replaced;
    }
    return InsertOutcome::Rejected;
}

std::vector<Elite> Archive::solutions_of_task(TaskId task, double f_max, double eps) const {
    check_task(task);
    if (eps < 0.0)
        throw std::invalid_argument("Archive::solutions_of_task: eps must be >= 0");
    std::vector<Elite> out;
    for (const auto& [key, elite] : per_task_[task])
        if (elite.fitness >= f_max - eps)
            out.push_back(elite);
    return out;
}

std::size_t Archive::solution_count(TaskId task, double f_max, double eps) const {
    check_task(task);
    std::size_t count = 0;
    for (const auto& [key, elite] : per_task_[task])
        if (elite.fitness >= f_max - eps)
            ++count;
    return count;
}

std::size_t Archive::solved_task_count(double f_max, double eps) const {
    std::size_t solved = 0;
    for (TaskId task : nonempty_tasks_)
        if (solution_count(task, f_max, eps) > 0)
            ++solved;
    return solved;
}

std::optional<std::pair<TaskId, Elite>> Archive::random_elite_of_random_task(RandomStream& rng) const {
    if (nonempty_tasks_.empty())
        return std::nullopt;
    const TaskId task = nonempty_tasks_[rng.index(nonempty_tasks_.size())];
    const CellMap& cells = per_task_[task];
    auto it = cells.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng.index(cells.size())));
    return std::make_pair(task, it->second);
}

std::optional<Elite> Archive::random_elite_of_task(TaskId task, RandomStream& rng) const {
    check_task(task);
    const CellMap& cells = per_task_[task];
    if (cells.empty())
        return std::nullopt;
    auto it = cells.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng.index(cells.size())));
    return it->second;
}

const Archive::CellMap& Archive::cells(TaskId task) const {
    check_task(task);
    return per_task_[task];
}

namespace {

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void dump_archive(const Archive& archive, std::ostream& out) {
    for (TaskId task = 0; task < archive.task_count(); ++task) {
        for (const auto& [key, elite] : archive.cells(task)) {
            out << "{\"task\": " << task << ", \"behavior\": [";
            for (std::size_t i = 0; i < key.size(); ++i)
                out << (i ? ", " : "") << key[i];
            out << "], \"command\": [";
            for (std::size_t i = 0; i < elite.command.size(); ++i)
                out << (i ? ", " : "") << format_double17(elite.command[i]);
            out << "], \"fitness\": " << format_double17(elite.fitness) << "}\n";
        }
    }
}

std::vector<DumpRecord> load_archive_dump(std::istream& in) {
    std::vector<DumpRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        nlohmann::json j = nlohmann::json::parse(line);
        DumpRecord rec;
        rec.task = j.at("task").get<TaskId>();
        rec.behavior = j.at("behavior").get<BehaviorKey>();
        rec.command = j.at("command").get<Command>();
        rec.fitness = j.at("fitness").get<double>();
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace mtmb
