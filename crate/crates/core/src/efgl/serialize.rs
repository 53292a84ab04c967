//! JSON views of rings, zigzags, orientation diagrams and general nodes.
//! Series are rendered in canonical text form so the output is byte-stable.

use std::collections::BTreeMap;

use serde::Serialize;

use super::cyclic::{Certificate, CyclicParams, Position, ZigzagDiagram};
use super::general::{GeneralNode, GeneralNodes};
use super::nodes::{EfglData, NodeMap};
use crate::algebra::{render_terms, GradedGenerator, Ring, RingMap};
use crate::error::Result;

#[derive(Serialize)]
pub struct RingJson {
    pub name: String,
    pub generators: Vec<GradedGenerator>,
    pub inverted: Vec<String>,
    pub relations: Vec<String>,
    pub relation_precision: u32,
    pub degree_bound: u32,
    pub laurent_bound: u32,
}

impl RingJson {
    pub fn of(ring: &Ring) -> Self {
        let rels = ring.relation_set();
        RingJson {
            name: ring.name().to_string(),
            generators: ring.generators().to_vec(),
            inverted: ring.inverted().iter().map(|s| s.to_string()).collect(),
            relations: rels.relations().iter().map(render_terms).collect(),
            relation_precision: rels.precision(),
            degree_bound: ring.degree_bound(),
            laurent_bound: ring.laurent_bound(),
        }
    }
}

#[derive(Serialize)]
pub struct MapJson {
    pub label: String,
    pub source: String,
    pub target: String,
    pub images: BTreeMap<String, String>,
    pub identity_on: Vec<String>,
    pub certificate: Option<Certificate>,
}

impl MapJson {
    pub fn of(map: &RingMap, certificate: Option<Certificate>) -> Self {
        MapJson {
            label: map.label().to_string(),
            source: map.source().name().to_string(),
            target: map.target().name().to_string(),
            images: map.images().iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            identity_on: map.passthrough().iter().map(|s| s.to_string()).collect(),
            certificate,
        }
    }
}

#[derive(Serialize)]
pub struct ZigzagJson {
    pub params: CyclicParams,
    pub fgl: String,
    pub rings: Vec<RingJson>,
    pub maps: Vec<MapJson>,
    pub certificates_pass: bool,
}

impl ZigzagJson {
    pub fn of(zz: &ZigzagDiagram) -> Self {
        let mut rings: Vec<RingJson> = zz.r_rings().iter().map(|r| RingJson::of(r)).collect();
        rings.extend(zz.s_rings().iter().map(|r| RingJson::of(r)));
        ZigzagJson {
            params: *zz.params(),
            fgl: zz.fgl().kind().to_string(),
            rings,
            maps: zz.maps().map(|m| MapJson::of(&m.map, Some(m.certificate.clone()))).collect(),
            certificates_pass: zz.certificates_pass(),
        }
    }
}

#[derive(Serialize)]
pub struct ComponentJson {
    pub index: Vec<u64>,
    pub variables: Vec<String>,
}

#[derive(Serialize)]
pub struct NodeJson {
    pub label: String,
    pub position: Position,
    pub arity: usize,
    pub components: Vec<ComponentJson>,
}

#[derive(Serialize)]
pub struct RoutingJson {
    pub target: Vec<u64>,
    pub source: Vec<u64>,
    pub images: BTreeMap<String, String>,
}

#[derive(Serialize)]
pub struct NodeMapJson {
    pub label: String,
    pub source: String,
    pub target: String,
    pub routing: Vec<RoutingJson>,
}

#[derive(Serialize)]
pub struct DiagramJson {
    pub zigzag: ZigzagJson,
    pub nodes: Vec<NodeJson>,
    pub maps: Vec<NodeMapJson>,
}

fn node_map_json(data: &EfglData, map: &NodeMap) -> Result<NodeMapJson> {
    let target = data.node(map.target.0, map.target.1)?;
    let source = data.node(map.source.0, map.source.1)?;
    let mut routing = Vec::new();
    for comp in target.components() {
        let rm = data.ring_map(map, &comp.index)?;
        let src = data.source_index(map, &comp.index)?;
        let vars = &source.component(&src)?.variables;
        let images = vars.iter().map(|v| Ok((v.to_string(), rm.image_of(v)?.to_string()))).collect::<Result<_>>()?;
        routing.push(RoutingJson { target: comp.index.clone(), source: src, images });
    }
    Ok(NodeMapJson { label: map.label.clone(), source: source.label(), target: target.label(), routing })
}

impl DiagramJson {
    /// The zigzag, the arity-1 and arity-2 nodes, and `ψ`, `φ`, `Δ` on them.
    pub fn of(data: &EfglData) -> Result<Self> {
        let params = *data.zigzag().params();
        let nodes = data
            .nodes()
            .filter(|n| n.arity == 1 || n.arity == 2)
            .map(|n| NodeJson {
                label: n.label(),
                position: n.position,
                arity: n.arity,
                components: n
                    .components()
                    .iter()
                    .map(|c| ComponentJson {
                        index: c.index.clone(),
                        variables: c.variables.iter().map(|v| v.to_string()).collect(),
                    })
                    .collect(),
            })
            .collect();
        let mut maps = Vec::new();
        for pos in params.positions() {
            maps.push(node_map_json(data, &data.delta(pos))?);
        }
        for k in 0..params.n {
            for arity in 1..=2 {
                maps.push(node_map_json(data, &data.psi(k, arity))?);
                maps.push(node_map_json(data, &data.phi(k, arity))?);
            }
        }
        Ok(DiagramJson { zigzag: ZigzagJson::of(data.zigzag()), nodes, maps })
    }
}

#[derive(Serialize)]
pub struct GeneralNodeJson {
    pub label: String,
    pub coefficients: RingJson,
    pub components: Vec<ComponentJson>,
}

impl GeneralNodeJson {
    pub fn of(node: &GeneralNode) -> Self {
        GeneralNodeJson {
            label: node.label.clone(),
            coefficients: RingJson::of(&node.coefficients),
            components: node
                .components
                .iter()
                .map(|(c, _, vars)| ComponentJson {
                    index: c.0.clone(),
                    variables: vars.iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct GeneralJson {
    pub group: String,
    pub chain: String,
    pub j: usize,
    pub fgl: String,
    pub representatives: Vec<Vec<String>>,
    pub nodes: Vec<GeneralNodeJson>,
}

impl GeneralJson {
    pub fn of(g: &GeneralNodes) -> Self {
        GeneralJson {
            group: g.group.to_string(),
            chain: g.chain.render(),
            j: g.j,
            fgl: g.fgl.kind().to_string(),
            representatives: g.representatives.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
            nodes: [&g.q, &g.t, &g.top].into_iter().map(GeneralNodeJson::of).collect(),
        }
    }
}
