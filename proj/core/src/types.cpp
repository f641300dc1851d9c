#include "agekit/types.hpp"

namespace agekit {

const char* sensor_name(SensorKind s) {
  switch (s) {
    case SensorKind::Acc: return "acc";
    case SensorKind::Gyro: return "gyro";
    case SensorKind::Lacc: return "lacc";
    case SensorKind::Rot: return "rot";
  }
  return "?";
}

std::optional<SensorKind> sensor_from_name(const std::string& name) {
  if (name == "acc") return SensorKind::Acc;
  if (name == "gyro") return SensorKind::Gyro;
  if (name == "lacc") return SensorKind::Lacc;
  if (name == "rot") return SensorKind::Rot;
  return std::nullopt;
}

const char* label_name(Label l) {
  return l == Label::Child ? "child" : "adult";
}

std::optional<Label> label_from_name(const std::string& name) {
  if (name == "child") return Label::Child;
  if (name == "adult") return Label::Adult;
  return std::nullopt;
}

const char* age_group_name(AgeGroup g) {
  switch (g) {
    case AgeGroup::YoungChild: return "young_child";
    case AgeGroup::OlderChild: return "older_child";
    case AgeGroup::Adult: return "adult";
    case AgeGroup::Unknown: return "unknown";
  }
  return "?";
}

std::optional<AgeGroup> age_group_from_name(const std::string& name) {
  if (name == "young_child") return AgeGroup::YoungChild;
  if (name == "older_child") return AgeGroup::OlderChild;
  if (name == "adult") return AgeGroup::Adult;
  if (name == "unknown") return AgeGroup::Unknown;
  return std::nullopt;
}

const char* observation_kind_name(ObservationKind k) {
  switch (k) {
    case ObservationKind::Tap: return "tap";
    case ObservationKind::Stroke: return "stroke";
    case ObservationKind::Sensor: return "sensor";
    case ObservationKind::TapSensor: return "tap+sensor";
    case ObservationKind::StrokeSensor: return "stroke+sensor";
  }
  return "?";
}

std::optional<ObservationKind> observation_kind_from_name(const std::string& name) {
  if (name == "tap") return ObservationKind::Tap;
  if (name == "stroke") return ObservationKind::Stroke;
  if (name == "sensor") return ObservationKind::Sensor;
  if (name == "tap+sensor") return ObservationKind::TapSensor;
  if (name == "stroke+sensor") return ObservationKind::StrokeSensor;
  return std::nullopt;
}

}  // namespace agekit
