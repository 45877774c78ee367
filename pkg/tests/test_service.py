import pytest
from fastapi.testclient import TestClient

from anomevent.dataset import load_dataset
from anomevent.service import create_app
from anomevent.synthetic import SyntheticSpec, make_synthetic_dataset


@pytest.fixture()
def service_root(tmp_path):
    root = tmp_path / "ds"
    make_synthetic_dataset(root, SyntheticSpec(n_videos_a=1, n_videos_b=1,
                                               frame_count=20, n_annotators=1, seed=3))
    return root


@pytest.fixture()
def client(service_root):
    return TestClient(create_app(service_root))


def test_list_videos(client):
    resp = client.get("/api/videos")
    assert resp.status_code == 200
    videos = resp.json()
    assert [v["video_id"] for v in videos] == ["v00", "v01"]
    assert videos[0]["frame_count"] == 20
    assert all(v["annotated_by_me"] is False for v in videos)


def test_list_videos_annotated_flag(client):
    resp = client.get("/api/videos", params={"annotator": "U01"})
    assert all(v["annotated_by_me"] for v in resp.json())
    resp = client.get("/api/videos", params={"annotator": "NEW"})
    assert not any(v["annotated_by_me"] for v in resp.json())


def test_get_frame(client):
    resp = client.get("/api/videos/v00/frames/0")
    assert resp.status_code == 200
    assert resp.headers["content-type"] == "image/png"
    again = client.get("/api/videos/v00/frames/0")
    assert again.content == resp.content


def test_get_frame_out_of_range(client):
    assert client.get("/api/videos/v00/frames/20").status_code == 404
    assert client.get("/api/videos/v00/frames/-1").status_code == 404
    assert client.get("/api/videos/vXX/frames/0").status_code == 404


def test_put_and_get_annotation(client, service_root):
    resp = client.put("/api/videos/v00/annotations/U07", json={"start": 3, "end": 9})
    assert resp.status_code == 200
    assert resp.json() == {"video_id": "v00", "annotator_id": "U07", "start": 3, "end": 9}

    got = client.get("/api/videos/v00/annotations/U07")
    assert got.json()["start"] == 3 and got.json()["end"] == 9

    # file parses under the dataset loader
    ds = load_dataset(service_root)
    rec = ds.annotation("v00", "U07")
    assert (rec.interval.start, rec.interval.end) == (3, 9)


def test_put_overwrites(client, service_root):
    client.put("/api/videos/v00/annotations/U07", json={"start": 3, "end": 9})
    client.put("/api/videos/v00/annotations/U07", json={"start": 5, "end": 12})
    got = client.get("/api/videos/v00/annotations/U07").json()
    assert (got["start"], got["end"]) == (5, 12)
    text = (service_root / "annotations" / "U07.csv").read_text()
    assert text == "video,start,end\nv00,5,12\n"


def test_put_invalid_interval(client):
    assert client.put("/api/videos/v00/annotations/U07",
                      json={"start": 9, "end": 3}).status_code == 400
    assert client.put("/api/videos/v00/annotations/U07",
                      json={"start": 0, "end": 20}).status_code == 400
    assert client.put("/api/videos/v00/annotations/U07",
                      json={"start": -1, "end": 3}).status_code == 400


def test_get_annotation_missing(client):
    assert client.get("/api/videos/v00/annotations/NOPE").status_code == 404


def test_annotation_file_loader_compatible_after_many_puts(client, service_root):
    for vid, (s, e) in [("v00", (1, 2)), ("v01", (4, 9)), ("v00", (2, 8))]:
        assert client.put(f"/api/videos/{vid}/annotations/U09",
                          json={"start": s, "end": e}).status_code == 200
    ds = load_dataset(service_root)
    assert ds.annotation("v00", "U09").interval.start == 2
    assert ds.annotation("v01", "U09").interval.end == 9


def test_marker_roundtrip_persists_and_reloads(tmp_path):
    # a marked interval on a long video survives persistence, re-parsing by
    # the dataset loader, and shows up in the video listing as annotated
    from conftest import make_minimal_root

    root = make_minimal_root(tmp_path / "long", frame_count=600)
    client = TestClient(create_app(root))

    resp = client.put("/api/videos/v01/annotations/U02", json={"start": 230, "end": 510})
    assert resp.status_code == 200

    text = (root / "annotations" / "U02.csv").read_text()
    assert "v01,230,510" in text.splitlines()

    rec = load_dataset(root).annotation("v01", "U02")
    assert (rec.interval.start, rec.interval.end) == (230, 510)

    fresh = TestClient(create_app(root))
    videos = fresh.get("/api/videos", params={"annotator": "U02"}).json()
    assert [v["annotated_by_me"] for v in videos if v["video_id"] == "v01"] == [True]


def test_serves_static_ui(service_root, tmp_path):
    ui = tmp_path / "ui"
    ui.mkdir()
    (ui / "index.html").write_text("<html><body>annotator</body></html>")
    client = TestClient(create_app(service_root, ui_dir=ui))
    resp = client.get("/")
    assert resp.status_code == 200
    assert "annotator" in resp.text
