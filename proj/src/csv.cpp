#include "passim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "passim/errors.hpp"

namespace passim {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

void write_tracks_csv(const std::filesystem::path& path, std::span<const VehicleTrack> tracks) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << "vehicle_id,time,lane_id,s,speed,accel\n";
  for (const auto& track : tracks) {
    for (const auto& rec : track.records) {
      out << track.vehicle_id << ',' << format_double(rec.time) << ',' << rec.lane_id << ','
          << format_double(rec.s) << ',' << format_double(rec.speed) << ','
          << format_double(rec.accel) << '\n';
    }
  }
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw SchemaError(where + ": cannot parse number '" + text + "'");
  }
}

int parse_int(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw SchemaError(where + ": cannot parse integer '" + text + "'");
  }
}

}  // namespace

std::vector<VehicleTrack> read_tracks_csv(const std::filesystem::path& path,
                                          const RoutePolyline* route) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  bool projected = false;
  if (line == "vehicle_id,time,lane_id,s,speed,accel") {
    projected = true;
  } else if (line == "vehicle_id,time,lane_id,x,y,speed,accel") {
    if (route == nullptr) {
      throw SchemaError(path.string() + ": file carries (x, y) but no route was given");
    }
  } else {
    throw SchemaError(path.string() + ": row 1: unrecognized header '" + line + "'");
  }

  std::vector<VehicleTrack> tracks;
  std::map<std::string, std::size_t> index;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = path.string() + ": row " + std::to_string(row);
    const auto fields = split_csv_row(line);
    const std::size_t expected = projected ? 6 : 7;
    if (fields.size() != expected) {
      throw SchemaError(where + ": expected " + std::to_string(expected) + " fields, got " +
                        std::to_string(fields.size()));
    }
    TrajectoryRecord rec;
    rec.time = parse_double(fields[1], where);
    rec.lane_id = parse_int(fields[2], where);
    if (projected) {
      rec.s = parse_double(fields[3], where);
      rec.speed = parse_double(fields[4], where);
      rec.accel = parse_double(fields[5], where);
    } else {
      const double x = parse_double(fields[3], where);
      const double y = parse_double(fields[4], where);
      rec.s = route->project(x, y);
      rec.speed = parse_double(fields[5], where);
      rec.accel = parse_double(fields[6], where);
    }
    if (rec.speed < 0.0) throw SchemaError(where + ": negative speed");

    auto [it, inserted] = index.try_emplace(fields[0], tracks.size());
    if (inserted) {
      tracks.push_back({fields[0], {}});
    }
    auto& track = tracks[it->second];
    if (!track.records.empty() && rec.time <= track.records.back().time) {
      throw SchemaError(where + ": time not strictly increasing for vehicle '" + fields[0] + "'");
    }
    track.records.push_back(rec);
  }
  if (tracks.empty()) throw SchemaError(path.string() + ": no data rows");
  return tracks;
}

void write_metrics_csv(const std::filesystem::path& path, const std::string& vehicle_id,
                       std::span<const SceneSnapshot> snapshots, const PassSeries& series,
                       std::span<const double> baseline) {
  if (snapshots.size() != series.size() || baseline.size() != series.size()) {
    throw InputError("metric series lengths disagree");
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << "vehicle_id,time,lane_id,v0,v_proj,chosen_lane,A,dA,dA_scaled,pass,baseline\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << vehicle_id << ',' << format_double(series.time[i]) << ',' << snapshots[i].ego_lane
        << ',' << format_double(snapshots[i].ego_speed) << ',' << format_double(series.v_proj[i])
        << ',' << series.chosen_lane[i] << ',' << format_double(series.available[i]) << ','
        << format_double(series.delta[i]) << ',' << format_double(series.delta_scaled[i]) << ','
        << format_double(series.pass[i]) << ',' << format_double(baseline[i]) << '\n';
  }
}

}  // namespace passim
