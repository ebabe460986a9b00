from fastapi.testclient import TestClient

from proximity_lab.main import app
from proximity_lab.models import ExperimentRun

client = TestClient(app)


def stored_run(**overrides):
    fields = dict(id=1, command="count", polynomial="x + y - z", seed=0, status="ok", exit_code=0,
                  report='{"count": 45}')
    fields.update(overrides)
    return ExperimentRun(**fields)


def test_root():
    response = client.get("/")
    assert response.status_code == 200
    assert response.json() == {"service": "proximity-lab", "docs": "/docs"}


def test_count_experiment(mock_db_session):
    response = client.post("/experiments/count", json={"poly": "x + y - z", "N": 10})

    assert response.status_code == 200
    body = response.json()
    assert body["schema"] == 1
    assert body["header"]["command"] == "count"
    assert body["report"]["count"] == 45
    stored = mock_db_session.add.call_args[0][0]
    assert stored.status == "ok"
    assert stored.exit_code == 0
    mock_db_session.commit.assert_called_once()


def test_count_with_explicit_sets(mock_db_session):
    response = client.post("/experiments/count", json={
        "poly": "z - x*y",
        "A": ["1", "2"],
        "B": ["1/2", "2"],
        "C": ["1", "4"]
    })

    assert response.status_code == 200
    assert response.json().get("report").get("count") == 2


def test_detect_experiment(mock_db_session):
    response = client.post("/experiments/detect", json={"poly": "x*(x + y)"})
    assert response.status_code == 200
    assert response.json()["report"]["verdict"] == "non-special"


def test_expand_experiment(mock_db_session):
    response = client.post("/experiments/expand", json={"poly": "x + y", "Ns": [8, 16]})
    assert response.status_code == 200
    assert [e["image"] for e in response.json()["report"]["entries"]] == [15, 31]


def test_two_lines_experiment(mock_db_session):
    response = client.post("/experiments/two-lines", json={"cos_theta": "1/2", "A": ["1", "2", "3"], "B": ["1", "2", "3"]})
    assert response.status_code == 200
    assert response.json()["report"]["exact_count"] == 5


def test_chain_experiment(mock_db_session):
    response = client.post("/experiments/chain", json={"poly": "z - x^2 - x*y", "N": 8})
    assert response.status_code == 200
    report = response.json()["report"]
    assert report["tuples"] <= report["I"]
    assert report["checks"]["tuples_le_incidences"]
    assert set(report["constants"]) == {"c_dec", "K", "S"}
    assert "c_dec" not in report


def test_parse_error_maps_to_400(mock_db_session):
    response = client.post("/experiments/detect", json={"poly": "x $ y"})

    assert response.status_code == 400
    stored = mock_db_session.add.call_args[0][0]
    assert stored.status == "failed"
    assert stored.exit_code == 2


def test_precondition_errors_map_to_422(mock_db_session):
    response = client.post("/experiments/chain", json={"poly": "x + y", "N": 3})
    assert response.status_code == 422
    assert "roles" in response.json().get("detail")

    response = client.post("/experiments/two-lines", json={"cos_theta": "0", "A": ["1"], "B": ["1"]})
    assert response.status_code == 422


def test_read_runs(mock_db_session):
    mock_db_session.query.return_value.all.return_value = [stored_run(), stored_run(id=2, status="failed", exit_code=3)]
    response = client.get("/runs/")
    assert response.status_code == 200
    assert [run["id"] for run in response.json()] == [1, 2]
    assert response.json()[0]["report"] == {"count": 45}


def test_read_run_success(mock_db_session):
    mock_db_session.query.return_value.filter.return_value.first.return_value = stored_run()
    response = client.get("/runs/1")
    assert response.status_code == 200
    assert response.json().get("command") == "count"
    assert response.json().get("polynomial") == "x + y - z"


def test_read_run_not_found(mock_db_session):
    mock_db_session.query.return_value.filter.return_value.first.return_value = None
    response = client.get("/runs/1")
    assert response.status_code == 404
    assert response.json().get("detail") == "Run not found"


def test_delete_run_success(mock_db_session):
    mock_db_session.query.return_value.filter.return_value.first.return_value = stored_run()

    response = client.delete("/runs/1")

    assert response.status_code == 200
    assert response.json().get("message") == "Run deleted successfully"
    mock_db_session.delete.assert_called_once()


def test_delete_run_not_found(mock_db_session):
    mock_db_session.query.return_value.filter.return_value.first.return_value = None

    response = client.delete("/runs/1")

    assert response.status_code == 404
    assert response.json().get("detail") == "Run not found"
