from proximity_lab import mcp_server


def test_count_grid_tool():
    result = mcp_server.count_grid("z - x*y", ["1", "2"], ["1", "2"], ["1", "2", "4"])
    assert result["count"] == 4
    assert result["sizes"] == [2, 2, 3]


def test_count_grid_reports_parse_errors():
    result = mcp_server.count_grid("z - 2x", ["1"], ["1"], ["1"])
    assert result["exit_code"] == 2
    assert result["stage"] is None
    assert "syntax" in result["hint"]


def test_chain_report_tool():
    result = mcp_server.chain_report("z - x^2 - x*y", 8)
    assert result["G"] >= 1
    assert result["tuples"] <= result["I"]
    assert result["constants"]["S"] >= 1
    assert result["constants"]["K"] == str(8 * result["constants"]["S"] * result["constants"]["c_dec"])
    assert isinstance(result["warnings"], list)


def test_chain_report_names_the_failing_stage():
    result = mcp_server.chain_report("x + y", 3)
    assert result["exit_code"] == 3
    assert result["stage"] == "roles"


def test_detect_special_form_tool():
    assert mcp_server.detect_special_form("x + y + x*y")["verdict"] == "special-candidate"
    assert mcp_server.detect_special_form("x^2 + x*y")["verdict"] == "non-special"


def test_growth_experiment_tool():
    result = mcp_server.growth_experiment("x + y", [8, 16, 32])
    assert [e["image"] for e in result["entries"]] == [15, 31, 63]
    failure = mcp_server.growth_experiment("x + y", [8, 8])
    assert failure["exit_code"] == 3


def test_list_commands():
    result = mcp_server.list_commands()
    assert result["count"] == 11
    assert "chain" in result["commands"]
    assert result["commands"] == sorted(result["commands"])
