from __future__ import annotations

from typing import Optional, Union

from fastapi import APIRouter
from pydantic import BaseModel

from ..core.sandpile import Digraph
from ..services import analysis
from ..services.exceptions import ServiceError
from ..services.schemas import GraphDocument
from .errors import to_http_exception
from .linalg import GroupResponse

router = APIRouter(prefix="/graphs", tags=["graphs"])


class GraphGroupResponse(BaseModel):
    vertices: int
    edges: int
    sink: str
    eulerian: bool
    group: GroupResponse
    spanning_trees: Union[int, str]


@router.post("/critical-group", response_model=GraphGroupResponse)
def graph_critical_group(payload: GraphDocument, sink: Optional[str] = None) -> GraphGroupResponse:
    """Sandpile group of the posted graph; ``sink`` overrides the document's sink."""

    try:
        graph = Digraph.from_edges(payload.vertices, payload.edges, sink=payload.sink, undirected=payload.undirected)
        result = analysis.analyse_graph(graph, sink)
    except ServiceError as exc:
        raise to_http_exception(exc) from exc
    return GraphGroupResponse(**result)
