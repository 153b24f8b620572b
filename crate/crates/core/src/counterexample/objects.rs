//! A- and B-objects of the example, the classes `bu` and `v-bar`, and the map
//! `theta` sending an extension to a B-object.

use super::Setting;
use crate::aobjects::{AObject, DeformationElement};
use crate::error::{Error, Result};
use crate::homology::{ext1, Ext1Space, ShortExact};
use crate::linalg::{Matrix, Scalar};
use crate::rep::{Rep, RepMap};

/// The distinguished classes of `Ext^1(L_1, N)`.
#[derive(Clone, Debug)]
pub struct Classes {
    pub ext_l1_m: Ext1Space,
    pub ext_l1_l3: Ext1Space,
    pub ext_l1_n: Ext1Space,
    /// Basis class of `Ext^1(L_1, M)`.
    pub v: Vec<Scalar>,
    /// `u = a v` in `Ext^1(L_1, L_3)`.
    pub u: Vec<Scalar>,
    /// `b u` in `Ext^1(L_1, N)`.
    pub bu: Vec<Scalar>,
    /// A preimage of `v` under `c_*`.
    pub vbar: Vec<Scalar>,
}

impl Classes {
    pub fn vbar_plus_bu(&self) -> Vec<Scalar> {
        self.vbar.iter().zip(&self.bu).map(|(x, y)| x + y).collect()
    }
}

impl Setting {
    /// The ordered collection `(L_1, M, L_3)`.
    pub fn collection(&self) -> Vec<Rep> {
        vec![self.l1.clone(), self.m.clone(), self.l3.clone()]
    }

    pub fn classes(&self) -> Result<Classes> {
        let ext_l1_m = ext1(&self.l1, &self.m)?;
        let ext_l1_l3 = ext1(&self.l1, &self.l3)?;
        let ext_l1_n = ext1(&self.l1, &self.n)?;
        let v = ext_l1_m.basis_class(0);
        let u = ext_l1_m.pushforward(&self.a, &v, &ext_l1_l3)?;
        let bu = ext_l1_l3.pushforward(&self.b, &u, &ext_l1_n)?;
        let images: Vec<Vec<Scalar>> = (0..ext_l1_n.dim())
            .map(|j| ext_l1_n.pushforward(&self.c, &ext_l1_n.basis_class(j), &ext_l1_m))
            .collect::<Result<_>>()?;
        let c_star = Matrix::from_columns(self.field, ext_l1_m.dim(), &images);
        let vbar = c_star
            .solve(&Matrix::column_vector(self.field, &v))?
            .ok_or_else(|| Error::Precondition("v has no preimage under c".into()))?
            .particular
            .column(0);
        Ok(Classes {
            ext_l1_m,
            ext_l1_l3,
            ext_l1_n,
            v,
            u,
            bu,
            vbar,
        })
    }

    /// The A-object `(Z_3 --sigma--> Z_2, Z_1)`.
    pub fn a_object(&self, sigma: &RepMap, z1: &Rep) -> Result<AObject> {
        AObject::from_components(
            self.algebra_a.clone(),
            vec![z1.clone(), sigma.target().clone(), sigma.source().clone()],
            vec![sigma.clone()],
        )
    }

    /// The B-object `(W_3 --tau2--> W_2 --tau1--> W_1)`.
    pub fn b_object(&self, tau2: &RepMap, tau1: &RepMap) -> Result<AObject> {
        if tau2.target() != tau1.source() {
            return Err(Error::InvalidAObject("maps are not composable".into()));
        }
        AObject::from_components(
            self.algebra_b.clone(),
            vec![tau1.target().clone(), tau1.source().clone(), tau2.source().clone()],
            vec![tau1.clone(), tau2.clone()],
        )
    }

    /// `theta(xi) = (Z_3 --sigma--> Z_2 --i--> W)` for `0 -> Z_2 -> W -> Z_1 -> 0`.
    pub fn theta(&self, sigma: &RepMap, xi: &ShortExact) -> Result<AObject> {
        if xi.sub() != sigma.target() {
            return Err(Error::InvalidAObject("the extension must start at the target of sigma".into()));
        }
        self.b_object(sigma, xi.inclusion())
    }

    /// `theta` of a class in `Ext^1(L_1, N)` over the A-object `(L_3 --b--> N, L_1)`,
    /// with the sequence realising it.
    pub fn theta_of_class(&self, classes: &Classes, x: &[Scalar]) -> Result<(AObject, ShortExact)> {
        let ses = classes.ext_l1_n.extension(x)?;
        Ok((self.theta(&self.b, &ses)?, ses))
    }

    /// The A-object `(L_3 --b--> N, L_1)` with `phi = (Id, c, Id)`.
    pub fn a_element(&self) -> Result<DeformationElement> {
        let obj = self.a_object(&self.b, &self.l1)?;
        let maps = vec![RepMap::identity(&self.l1), self.c.clone(), RepMap::identity(&self.l3)];
        DeformationElement::from_component_maps(obj, self.collection(), maps)
    }

    /// `(theta(xi), phi)` with `phi = (can, c, Id)`.
    pub fn b_element(&self, obj: &AObject, xi: &ShortExact) -> Result<DeformationElement> {
        let maps = vec![xi.projection().clone(), self.c.clone(), RepMap::identity(&self.l3)];
        DeformationElement::from_component_maps(obj.clone(), self.collection(), maps)
    }
}
