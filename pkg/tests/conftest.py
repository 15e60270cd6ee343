import json

import numpy as np
import pytest

from causalwatch import AttributeSchema, CountStore, EventRecord, ingest_event

# classic 14-row weather table; "strike" plays the distress role
WEATHER14 = [
    ({"outlook": "sunny", "temp": "hot", "humidity": "high", "wind": "weak"}, "strike"),
    ({"outlook": "sunny", "temp": "hot", "humidity": "high", "wind": "strong"}, "strike"),
    ({"outlook": "overcast", "temp": "hot", "humidity": "high", "wind": "weak"}, "calm"),
    ({"outlook": "rain", "temp": "mild", "humidity": "high", "wind": "weak"}, "calm"),
    ({"outlook": "rain", "temp": "cool", "humidity": "normal", "wind": "weak"}, "calm"),
    ({"outlook": "rain", "temp": "cool", "humidity": "normal", "wind": "strong"}, "strike"),
    ({"outlook": "overcast", "temp": "cool", "humidity": "normal", "wind": "strong"}, "calm"),
    ({"outlook": "sunny", "temp": "mild", "humidity": "high", "wind": "weak"}, "strike"),
    ({"outlook": "sunny", "temp": "cool", "humidity": "normal", "wind": "weak"}, "calm"),
    ({"outlook": "rain", "temp": "mild", "humidity": "normal", "wind": "weak"}, "calm"),
    ({"outlook": "sunny", "temp": "mild", "humidity": "normal", "wind": "strong"}, "calm"),
    ({"outlook": "overcast", "temp": "mild", "humidity": "high", "wind": "strong"}, "calm"),
    ({"outlook": "overcast", "temp": "hot", "humidity": "normal", "wind": "weak"}, "calm"),
    ({"outlook": "rain", "temp": "mild", "humidity": "high", "wind": "strong"}, "strike"),
]

WEATHER_SCHEMA = {
    "attributes": [
        {"name": "outlook", "kind": "categorical", "domain": ["sunny", "overcast", "rain"]},
        {"name": "temp", "kind": "categorical", "domain": ["hot", "mild", "cool"]},
        {"name": "humidity", "kind": "categorical", "domain": ["high", "normal"]},
        {"name": "wind", "kind": "categorical", "domain": ["weak", "strong"]},
    ],
    "classes": ["calm", "strike"],
    "distress_class": "strike",
}


def store_from_rows(schema: AttributeSchema, rows) -> CountStore:
    store = CountStore(schema)
    for ts, (values, label) in enumerate(rows):
        ingest_event(store, EventRecord("unit", ts, values, label))
    return store


def random_rows(rng: np.random.Generator, n_attrs, n_values, n_classes, n_events,
                label_prob=1.0):
    rows = []
    for _ in range(n_events):
        values = {f"a{i}": f"v{rng.integers(n_values)}" for i in range(n_attrs)}
        label = f"c{rng.integers(n_classes)}" if rng.random() < label_prob else None
        rows.append((values, label))
    return rows


def make_schema(n_attrs, n_values, n_classes) -> AttributeSchema:
    return AttributeSchema.from_dict(
        {
            "attributes": [
                {"name": f"a{i}", "kind": "categorical",
                 "domain": [f"v{j}" for j in range(n_values)]}
                for i in range(n_attrs)
            ],
            "classes": [f"c{i}" for i in range(n_classes)],
            "distress_class": "c0",
        }
    )


@pytest.fixture(scope="session")
def weather_schema() -> AttributeSchema:
    return AttributeSchema.from_dict(WEATHER_SCHEMA)


@pytest.fixture(scope="session")
def weather_store(weather_schema) -> CountStore:
    return store_from_rows(weather_schema, WEATHER14).snapshot()


@pytest.fixture
def schema_file(tmp_path):
    path = tmp_path / "schema.json"
    path.write_text(json.dumps(WEATHER_SCHEMA))
    return path


@pytest.fixture
def events_file(tmp_path):
    path = tmp_path / "events.jsonl"
    with open(path, "w") as fh:
        for ts, (values, label) in enumerate(WEATHER14):
            fh.write(json.dumps({"unit": "plant-a", "ts": ts, "values": values, "label": label}) + "\n")
    return path
