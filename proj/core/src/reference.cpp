#include "ridet/reference.hpp"

namespace ridet::reference {

const DatasetCounts* counts_for(Basin basin, Strategy::Name strategy) {
    if (strategy != Strategy::Name::I) return nullptr;  // only published for Strategy I
    switch (basin) {
        case Basin::SouthPacific: return &kSouthPacificStrategyICounts;
        case Basin::SouthIndian: return &kSouthIndianStrategyICounts;
        default: return nullptr;
    }
}

const ConfusionMatrix* best_confusion_for(Basin basin, Strategy::Name strategy) {
    if (basin == Basin::SouthPacific) {
        return strategy == Strategy::Name::I ? &kSouthPacificStrategyIBest
                                             : &kSouthPacificStrategyIIBest;
    }
    if (basin == Basin::SouthIndian) {
        return strategy == Strategy::Name::I ? &kSouthIndianStrategyIBest
                                             : &kSouthIndianStrategyIIBest;
    }
    return nullptr;
}

const AccuracyStats* accuracy_for(Basin basin, Strategy::Name strategy) {
    if (basin == Basin::SouthPacific) {
        return strategy == Strategy::Name::I ? &kSouthPacificStrategyIAccuracy
                                             : &kSouthPacificStrategyIIAccuracy;
    }
    if (basin == Basin::SouthIndian) {
        return strategy == Strategy::Name::I ? &kSouthIndianStrategyIAccuracy
                                             : &kSouthIndianStrategyIIAccuracy;
    }
    return nullptr;
}

}  // namespace ridet::reference
