#pragma once

#include <p123/error.hpp>
#include <p123/graph.hpp>
#include <p123/partition.hpp>
#include <p123/labelling.hpp>
#include <p123/step2.hpp>
#include <p123/parity.hpp>
#include <p123/nullstellensatz.hpp>
#include <p123/step3.hpp>
#include <p123/engine.hpp>
