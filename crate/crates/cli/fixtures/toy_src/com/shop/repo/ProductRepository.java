package com.shop.repo;

import java.util.Collection;
import java.util.Set;
import java.util.TreeSet;
import com.shop.model.Product;
import com.shop.util.ShopException;

public class ProductRepository implements Repository<Product> {
    private final Set<Product> products = new TreeSet<>();

    public boolean exists(Product p) {
        return products.contains(p);
    }

    @Override
    public Collection<Product> all() {
        return products;
    }
}
