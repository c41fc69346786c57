package com.shop.service;

import com.shop.model.Product;
import com.shop.model.Money;
import com.shop.repo.ProductRepository;

public class CartService {
    private final ProductRepository products = new ProductRepository();
    private Money total = Money.ZERO;

    public void add(Product p) {
        if (products.exists(p)) {
            total = total.plus(p.price());
        }
    }

    public Money total() {
        return total;
    }
}
