use hypercore::{canonical_h5, Edge, Hypergraph, Vertex};
use strategies::Lemma41Builder;

use crate::cover::check_property_iii_constructive;
use crate::observation::check_observation42;
use crate::properties::{
    check_missing1edge, check_property_i, check_property_ii, check_property_iv,
    check_property_iv_pairs, check_property_v, check_property_vi, r_and_g,
};
use crate::report::FullReport;
use crate::rigidity::rigidity_chain;
use crate::uniquerg::check_uniquerg;

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Restrict Property (iv) to these pairs. A restricted sweep never
    /// yields the draw-sufficient verdict.
    pub pairs: Option<Vec<(Edge, Edge)>>,
}

/// `verify_all` with the full pair sweep.
pub fn verify_all(h: &Hypergraph, z: Vertex) -> FullReport {
    verify_with(h, z, &VerifyOptions::default())
}

pub fn verify_with(h: &Hypergraph, z: Vertex, opts: &VerifyOptions) -> FullReport {
    let (iv, rigidity) = match &opts.pairs {
        None => check_property_iv(h),
        Some(p) => check_property_iv_pairs(h, p),
    };
    let (iii, _) = check_property_iii_constructive(h, z, &Lemma41Builder::new());
    let properties = vec![
        check_property_i(h, z),
        check_property_ii(h, z),
        iii,
        iv,
        check_property_v(h, z),
        check_property_vi(h, z),
    ];

    let mut supporting = vec![check_missing1edge(h).0];
    if r_and_g(h, z).is_some() {
        supporting.push(check_uniquerg(h, z).0);
    }
    supporting.push(check_observation42(h, z).0);
    let canon = canonical_h5();
    if *h == canon.graph && z == canon.z {
        supporting.extend(rigidity_chain(h, z, &canon.r, &canon.g));
    }

    let partial = opts.pairs.is_some();
    FullReport {
        draw_sufficient: !partial && properties.iter().all(|p| p.holds),
        partial,
        properties,
        supporting,
        rigidity,
    }
}
